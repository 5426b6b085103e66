"""Configuration plumbing for the gaussmzi command line: a traitlets
Application with flat JSON config files and --set overrides, angle traits,
and the CSV and progress reporters."""
