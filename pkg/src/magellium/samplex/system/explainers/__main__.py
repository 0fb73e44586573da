import sys

from magellium.samplex.system.explainers.application.ports.inputs.user_interface import UserInterface
from magellium.samplex.system.explainers.infrastructure.adapters.inputs.user_interface import CommandLineUserInterface

def main():
    user_interface: UserInterface = CommandLineUserInterface()
    try:
        status = user_interface.run()
    except KeyboardInterrupt:
        status = 130
    sys.exit(status)

if (__name__ == "__main__"):
    main()
