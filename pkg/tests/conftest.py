import dataclasses
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracle module

from qs2qasm.ast_nodes import Expression

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


def read_data(name: str) -> str:
    return (DATA_DIR / name).read_text(encoding="utf-8")


def walk_expressions(obj, found: list[Expression] | None = None) -> list[Expression]:
    """Collect every Expression reachable from a node tree, depth first."""
    if found is None:
        found = []
    if isinstance(obj, Expression):
        found.append(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        for f in dataclasses.fields(obj):
            walk_expressions(getattr(obj, f.name), found)
    elif isinstance(obj, (list, tuple)):
        for item in obj:
            walk_expressions(item, found)
    return found
