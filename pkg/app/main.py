"""
Entry point: `python -m app.main <subcomando> ...`
"""

from app.cli.cli import cli


def main() -> None:
    cli(prog_name="orbitcount")


if __name__ == "__main__":
    main()
