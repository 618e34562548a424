"""Identity language, evaluator and the built-in catalog."""

from .catalog import (
    IdentityEntry,
    builtin_catalog,
    catalog_entry,
    dump_catalog,
    entry_from_text,
    parse_catalog,
    verify_identity,
)
from .dsl import Identity, parse_expr, parse_identity, to_text
from .evaluate import evaluate

__all__ = [
    "Identity",
    "IdentityEntry",
    "builtin_catalog",
    "catalog_entry",
    "dump_catalog",
    "entry_from_text",
    "evaluate",
    "parse_catalog",
    "parse_expr",
    "parse_identity",
    "to_text",
    "verify_identity",
]
