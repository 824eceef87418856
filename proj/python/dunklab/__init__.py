"""Exact checks for Dunkl operators of complex reflection groups and their spin chains."""

import json

from . import _core
from ._core import CycloScalar, DomainError, __version__, group_order, lattice_positions

__all__ = [
    "CycloScalar",
    "DomainError",
    "__version__",
    "group_order",
    "lattice_positions",
    "relation_suite",
    "hecke_relations",
    "recursion",
    "reduction_check",
    "projector_check",
    "hamiltonian_check",
    "verify_agreement",
    "projector_identities",
    "dunkl_operator",
    "lattice",
    "scan",
    "spectrum",
    "frozen_chain",
]


def _decoded(fn):
    def call(*args, **kwargs):
        return json.loads(fn(*args, **kwargs))

    call.__name__ = fn.__name__
    call.__doc__ = fn.__doc__
    return call


relation_suite = _decoded(_core.relation_suite)
hecke_relations = _decoded(_core.hecke_relations)
recursion = _decoded(_core.recursion)
reduction_check = _decoded(_core.reduction_check)
projector_check = _decoded(_core.projector_check)
hamiltonian_check = _decoded(_core.hamiltonian_check)
verify_agreement = _decoded(_core.verify_agreement)
projector_identities = _decoded(_core.projector_identities)
dunkl_operator = _decoded(_core.dunkl_operator)
lattice = _decoded(_core.lattice)
scan = _decoded(_core.scan)
spectrum = _decoded(_core.spectrum)


def frozen_chain(*args, **kwargs):
    """Frozen spin chain as a numpy array, plus the integrability warning flag."""
    import numpy as np

    rows, warning = _core.frozen_chain(*args, **kwargs)
    return np.array(rows, dtype=complex), warning
