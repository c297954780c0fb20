"""Module entry point so `python -m diracshell` matches the console script."""

from .cli import entry

if __name__ == "__main__":
    entry()
