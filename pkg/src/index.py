import sys
from ui.cli import CommandLineInterface


class Main:
    """Purpose of this class is to initialize and run the command line interface.
    """

    def __init__(self, argv):
        self.exit_code = CommandLineInterface().run(argv)


if __name__ == "__main__":
    application = Main(sys.argv[1:])
    sys.exit(application.exit_code)
