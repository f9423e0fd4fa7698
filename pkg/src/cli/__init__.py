"""Command-line front end: subcommands, report models and formatters."""
