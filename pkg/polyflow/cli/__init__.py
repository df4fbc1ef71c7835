# Command implementations; each run_* takes a validated JobSpec and returns an exit code
