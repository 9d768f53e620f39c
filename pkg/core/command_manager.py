"""Command discovery, validation, and argument-parser construction."""
import argparse
import importlib
import logging
import os
import sys
from pathlib import Path
from types import ModuleType
from typing import Dict, List, Optional, Tuple

from config.app_config import APP_NAME, APP_VERSION, COMMANDS_DIR, SKIP_FILES
from .output_writer import FORMATS

logger = logging.getLogger(__name__)

REQUIRED_ATTRIBUTES = ("NAME", "DESCRIPTION", "PARAMETERS")

# PARAMETERS "type" strings -> argparse converters
TYPE_MAP = {
    "int": int,
    "float": float,
    "str": str,
}

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


class CommandLineParser(argparse.ArgumentParser):
    """ArgumentParser reporting usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _commands_path() -> Path:
    return Path(__file__).parent.parent.resolve() / COMMANDS_DIR


def validate_command(module: ModuleType) -> Tuple[bool, str]:
    """
    Check a command module declares NAME, DESCRIPTION, PARAMETERS and run().

    Returns:
        Tuple of (is_valid, error_message)
    """
    for attribute in REQUIRED_ATTRIBUTES:
        if not hasattr(module, attribute):
            return False, f"Missing required variable: {attribute}"
    if not isinstance(module.NAME, str) or not module.NAME.strip():
        return False, "NAME must be a non-empty string"
    if not isinstance(module.PARAMETERS, list):
        return False, "PARAMETERS must be a list"
    for param in module.PARAMETERS:
        if "name" not in param or "type" not in param:
            return False, f"Parameter without name or type: {param}"
        if param["type"] not in TYPE_MAP and param["type"] != "bool":
            return False, f"Unknown parameter type: {param['type']}"
    if not callable(getattr(module, "run", None)):
        return False, "Missing required function: run()"
    return True, ""


class CommandManager:
    """Discovers command modules and turns their PARAMETERS into a CLI."""

    def __init__(self):
        self._commands: Dict[str, ModuleType] = {}

    def load_commands(self) -> List[ModuleType]:
        """
        Import every module in the commands package.

        Invalid modules are skipped with a warning.

        Returns:
            Command modules in file-name order
        """
        commands = {}
        directory = _commands_path()
        for filename in sorted(os.listdir(directory)):
            if (filename.endswith(".py")
                    and not filename.startswith("__")
                    and filename not in SKIP_FILES):
                module = importlib.import_module(f"{COMMANDS_DIR}.{filename[:-3]}")
                valid, message = validate_command(module)
                if not valid:
                    logger.warning("Skipping command %s: %s", filename, message)
                    continue
                commands[module.NAME] = module
        self._commands = commands
        return list(commands.values())

    def get_command(self, name: str) -> Optional[ModuleType]:
        if not self._commands:
            self.load_commands()
        return self._commands.get(name)

    def get_all(self) -> List[ModuleType]:
        if not self._commands:
            self.load_commands()
        return list(self._commands.values())

    @staticmethod
    def _common_options() -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--tol", type=float, default=None,
                            help="Solver tolerance (default: config file, CCPB_DEFAULT_TOL or 1e-10)")
        common.add_argument("--format", choices=FORMATS, default="csv", help="Output format")
        common.add_argument("--out", default=None, help="Output file (default: stdout)")
        common.add_argument("--jobs", type=int, default=None,
                            help="Worker processes for sweeps (default: all cores)")
        common.add_argument("--save-defaults", action="store_true",
                            help="Store the resolved tol/n_samples/jobs as user defaults")
        return common

    @staticmethod
    def _add_parameter(parser: argparse.ArgumentParser, param: Dict) -> None:
        help_text = param.get("description", "")
        if param["type"] == "bool":
            parser.add_argument(f"--{param['name']}", action="store_true", help=help_text)
            return
        kwargs = {"type": TYPE_MAP[param["type"]], "help": f"{help_text} Default: {param.get('default')}"}
        if "choices" in param:
            kwargs["choices"] = param["choices"]
        if param.get("positional"):
            parser.add_argument(param["name"], **kwargs)
            return
        if param.get("required"):
            kwargs["required"] = True
        else:
            kwargs["default"] = param.get("default")
        parser.add_argument(f"--{param['name']}", **kwargs)

    def build_parser(self) -> CommandLineParser:
        """Top-level parser with one subcommand per command module."""
        parser = CommandLineParser(prog="ccpb", description=f"{APP_NAME} {APP_VERSION}")
        parser.add_argument("--verbose", action="store_true", help="Log solver progress to stderr")
        parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
        subparsers = parser.add_subparsers(dest="command", required=True)
        common = self._common_options()
        for module in self.get_all():
            sub = subparsers.add_parser(module.NAME, help=module.DESCRIPTION,
                                        description=module.DESCRIPTION, parents=[common])
            for param in module.PARAMETERS:
                self._add_parameter(sub, param)
        return parser
