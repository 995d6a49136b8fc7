# main.py
import sys
import click
import settings
from scavenger.commands.hunt import hunt_commands
from scavenger.commands.tools import tool_commands
from scavenger.commands.verify import verify_commands
from scavenger.errors import ScavengerError

# Initialize logger
logger = settings.logging.getLogger("scavenger")

EXIT_USAGE = 64


class ScavengerCLI:
    """
    Main class containing the command line interface
    """
    def __init__(self):
        """
        Build the command group and register every command module.

        Attributes:
            _cli (click.Group): Command group holding all subcommands.
        """
        self._cli = click.Group(
            name="scavenger",
            help="Search for and verify 4-chromatic subgraphs of G(Q^3, sqrt t).",
        )
        self._register_commands()

    def _register_commands(self):
        """Register available commands"""
        verify_commands(self._cli)
        hunt_commands(self._cli)
        tool_commands(self._cli)

    def dispatch(self, args) -> int:
        """
        Run one command line.

        Args:
            args (list[str]): Arguments after the program name.

        Returns:
            int: 0 pass, 1 fail, 2 pass with warnings, 64 usage error.
        """
        try:
            result = self._cli.main(args=list(args), prog_name="scavenger", standalone_mode=False)
        except click.UsageError as e:
            e.show()
            return EXIT_USAGE
        except click.ClickException as e:
            e.show()
            return 1
        except click.Abort:
            click.echo("Aborted.", err=True)
            return 1
        except ScavengerError as e:
            logger.error(f"{type(e).__name__}: {e}")
            click.echo(f"error: {e}", err=True)
            return 1
        if result is None:
            return 0
        return int(result)


def main():
    cli = ScavengerCLI()
    sys.exit(cli.dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
