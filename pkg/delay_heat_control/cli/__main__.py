"""CLI entry point for python -m delay_heat_control.cli execution."""

from . import main

if __name__ == "__main__":
    main()
