"""The arithmetic demo repository and its pull-request history."""

from __future__ import annotations

from pathlib import Path

from gitfixture import RepoBuilder

T0 = 1_700_000_000
DAY = 86_400

README_V1 = """\
# Arithmetic

Mathematical functions are defined in `arithmetic.py` and called from `main.py`.

## Functions

- `add(a, b)` returns the sum of a and b
- `subtract(a, b)` returns a minus b
- `multiply(a, b)` returns the product of a and b
- `divide(a, b)` returns a divided by b
"""

ARITHMETIC_V1 = """\
def add(a, b):
    return a + b


def subtract(a, b):
    return a - b


def multiply(a, b):
    return a * b


def divide(a, b):
    return a / b
"""

MAIN_V1 = """\
import arithmetic

print(arithmetic.add(2, 3))
print(arithmetic.subtract(5, 2))
print(arithmetic.multiply(arithmetic.multiply(2, 2), 2))
"""

# The pull request: subtract and divide go away, power arrives, and the
# chained multiply calls become a single power call.
ARITHMETIC_V2 = """\
def add(a, b):
    return a + b


def multiply(a, b):
    return a * b


def power(a, b):
    return a ** b
"""

MAIN_V2 = """\
import arithmetic

print(arithmetic.add(2, 3))
print(arithmetic.power(2, 3))
"""

# Follow-up: document power, mention the removed functions in plain prose.
README_V3 = """\
# Arithmetic

Mathematical functions are defined in `arithmetic.py` and called from `main.py`.

## Functions

- `add(a, b)` returns the sum of a and b
- `multiply(a, b)` returns the product of a and b
- `power(a, b)` returns a raised to the power of b

## Deprecated

The subtract and divide functions have been removed.
"""


def demo_builder(path: Path, *, with_fix: bool = False) -> RepoBuilder:
    b = RepoBuilder(path)
    b.commit(
        {"README.md": README_V1, "arithmetic.py": ARITHMETIC_V1, "main.py": MAIN_V1},
        T0,
        "Add arithmetic functions",
    )
    b.commit(
        {"arithmetic.py": ARITHMETIC_V2, "main.py": MAIN_V2},
        T0 + DAY,
        "Replace subtract and divide with power",
    )
    if with_fix:
        b.commit({"README.md": README_V3}, T0 + 2 * DAY, "Update README")
    return b


def build_demo(path: Path, *, with_fix: bool = False) -> RepoBuilder:
    b = demo_builder(path, with_fix=with_fix)
    b.build()
    return b
