"""Entry point for running chibound as a module: python -m chibound."""

from chibound.cli import main

if __name__ == "__main__":
    main()
