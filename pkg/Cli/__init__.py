from Cli.main import run_command, main
