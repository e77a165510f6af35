"""Weak-key solvers: implicit BSGS, implicit kangaroo and the audit driver."""

from .audit import AuditReport, audit_key, gen_weak_key, subgroup_context
from .bsgs import UnverifiedMatch, bsgs_weak
from .kangaroo import KangarooParams, kangaroo_weak, make_kangaroo_params, partition_index
from .kkm import KKMTable, choose_c, fixed_base, kkm_build, kkm_pow

__all__ = [
    "AuditReport",
    "KKMTable",
    "KangarooParams",
    "UnverifiedMatch",
    "audit_key",
    "bsgs_weak",
    "choose_c",
    "fixed_base",
    "gen_weak_key",
    "kangaroo_weak",
    "kkm_build",
    "kkm_pow",
    "make_kangaroo_params",
    "partition_index",
    "subgroup_context",
]
