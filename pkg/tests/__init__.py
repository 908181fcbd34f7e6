# Thermal Lab Test Suite
