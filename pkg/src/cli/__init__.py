"""Command-line front end for the developable patch pipeline."""
