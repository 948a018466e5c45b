"""Set Turing machines over hereditarily finite sets."""

from ._core import (  # noqa: F401
    EvalError,
    HFSet,
    InvarianceError,
    Machine,
    ParseError,
    RecParseError,
    RunFailure,
    TableError,
    compile,
    decode,
    encode,
    equiv,
    eval,
    fm_eval,
    is_canonical,
    numeral,
    run,
    stdlib,
    stdlib_names,
    trcl,
    universe,
)
