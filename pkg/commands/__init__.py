# Command line subcommands
