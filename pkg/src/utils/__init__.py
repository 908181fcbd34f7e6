# Logging and numeric helpers
