"""One command class per kpull subcommand."""
