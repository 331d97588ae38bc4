"""Finite orthomodular lattices, quantifiers, cylindric checks and tensor subspaces."""

import json as _json

from . import _core
from ._core import (  # noqa: F401
    Lattice,
    ParseError,
    PreconditionError,
    QmonError,
    SizeGuardError,
    StructureError,
    blocks,
    boolean,
    center,
    fixpoints,
    greechie,
    hexagon,
    is_orthomodular,
    is_quantifier,
    mo,
    ol_violations,
    quantifier_axioms,
    quantifier_from_subalgebra,
    sasaki_hook,
    sasaki_product,
    subalgebras,
)


def _report(pair):
    code, text = pair
    out = _json.loads(text)
    out["exit_code"] = code
    return out


def check(kind, path, *, seed=0, max_size=512, oml=False):
    """Run a structure check on a file; returns the report as a dict."""
    return _report(_core.check(kind, str(path), seed=seed, max_size=max_size, oml=oml))


def repro(name, *, dim=0, layout=()):
    return _report(_core.repro(name, dim=dim, layout=list(layout)))


def search(target, *, max_blocks=4, boolean_only=False, max_atoms=4, dim=0, seed=0):
    return _report(_core.search(target, max_blocks=max_blocks, boolean_only=boolean_only,
                                max_atoms=max_atoms, dim=dim, seed=seed))


def exists_factor(subspace, i):
    """∃ over factor i of a subspace document (dict in the subspace file format)."""
    return _json.loads(_core.exists_factor(_json.dumps(subspace), i))
