"""The catalogue of shipped logics.

Each logic lives in ``logics/<name>.dlx``.  ``parallel`` is the exception
that proves the rule: it is *constructed* from the positive rules of
``parallel_plus`` by retargeting them at even-handed closures and adding
the strong negation of each, and ``logics/parallel.dlx`` is the printed
result (kept in sync by the test suite).
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .conditions import rename_closures
from .errors import DLError
from .logic import ClosureDecl, InferenceRule, LogicDef, complete_by_sneg, parse_logic
from .tags import MINUS, PLUS, Tag

FILE_LOGICS = (
    "delta", "classic", "parallel_plus", "cwa_naive", "cwa_revised",
    "unstable_choice", "d1_d2", "d2", "cyclic_closure",
)
CATALOG = ("delta", "classic", "parallel") + FILE_LOGICS[2:]

# Logics expected to pass check_logic.
WELL_DISCIPLINED = ("delta", "classic", "parallel", "cwa_revised", "d2")


class UnknownLogic(DLError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


def logic_source(name: str) -> str:
    if name not in CATALOG:
        raise UnknownLogic(f"unknown logic {name!r}; choose from {', '.join(CATALOG)}")
    return resources.files(__package__).joinpath("logics", f"{name}.dlx").read_text()


def _build_parallel() -> LogicDef:
    plus = get_logic("parallel_plus")
    mapping = {"P_plus_delta": "P_delta", "P_plus_lambda": "P_lambda"}
    positive = [InferenceRule(r.tag, rename_closures(r.condition, mapping)) for r in plus.rules]
    closures = [ClosureDecl("P_delta", [Tag(PLUS, "delta"), Tag(MINUS, "delta")]),
                ClosureDecl("P_lambda", [Tag(PLUS, "lambda"), Tag(MINUS, "lambda")])]
    return complete_by_sneg("parallel", positive, closures, main=("spartial",))


@lru_cache(maxsize=None)
def get_logic(name: str) -> LogicDef:
    if name == "parallel":
        return _build_parallel()
    return parse_logic(logic_source(name))
