import math
from types import SimpleNamespace

import pytest

from commands import sweep_row
from core.command_manager import CommandManager, validate_command
from core.sweep_executor import RowOutcome


def _module(**overrides):
    attributes = dict(NAME="demo", DESCRIPTION="Demo", PARAMETERS=[{"name": "L", "type": "float"}],
                      run=lambda args: 0)
    attributes.update(overrides)
    return SimpleNamespace(**attributes)


def test_all_commands_are_discovered():
    names = {module.NAME for module in CommandManager().load_commands()}
    assert names == {"solve", "approx-error", "regimes", "screening", "estimate"}


def test_valid_module():
    assert validate_command(_module()) == (True, "")


@pytest.mark.parametrize("overrides, message", [
    (dict(run=None), "Missing required function: run()"),
    (dict(NAME=" "), "NAME must be a non-empty string"),
    (dict(PARAMETERS={}), "PARAMETERS must be a list"),
    (dict(PARAMETERS=[{"name": "L", "type": "complex"}]), "Unknown parameter type: complex"),
])
def test_invalid_modules(overrides, message):
    assert validate_command(_module(**overrides)) == (False, message)


def test_missing_declaration():
    module = _module()
    del module.DESCRIPTION
    assert validate_command(module) == (False, "Missing required variable: DESCRIPTION")


def test_parser_carries_common_options():
    parser = CommandManager().build_parser()
    args = parser.parse_args(["solve", "--L", "10", "--V", "2", "--tol", "1e-9", "--format", "json"])
    assert args.command == "solve"
    assert args.L == 10.0
    assert args.tol == 1e-9
    assert args.format == "json"
    assert args.save_defaults is False


def test_sweep_row():
    assert sweep_row(RowOutcome([1.0, 2.0]), 2) == [1.0, 2.0, "ok"]
    failed = sweep_row(RowOutcome(None, "BracketingError", "no sign change"), 2)
    assert failed[-1] == "BracketingError"
    assert all(math.isnan(v) for v in failed[:2])
