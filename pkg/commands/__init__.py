"""CLI subcommands. Each module declares NAME, DESCRIPTION, PARAMETERS and run(args)."""
from core.sweep_executor import RowOutcome, nan_row


def sweep_row(outcome: RowOutcome, width: int) -> list:
    """Values of a sweep row followed by its status; NaN-filled when the row failed."""
    values = list(outcome.value) if outcome.ok else nan_row(width)
    return values + [outcome.status]
