# Run defaults, config files and CSV schemas
