# Pydantic value types shared by services and the CLI
