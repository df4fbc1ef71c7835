# Core settings, exceptions and logging setup
