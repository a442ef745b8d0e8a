"""Two-closures of finite permutation groups and totally 2-closed group checks."""

__version__ = "0.1.0"

from twoclosure.perms import Permutation, compose, parse_permutation
from twoclosure.groups import PermGroup
from twoclosure.structure import StructureReport, structure_report
from twoclosure.orbitals import OrbitalPartition, orbital_partition, rank
from twoclosure.closure import (
    ClosureResult,
    is_2closed,
    two_closure,
    two_closure_bruteforce,
    wielandt_membership,
)
from twoclosure.groupspec import materialize, parse_group_spec
from twoclosure.t2c import RepSpec, T2CVerdict, faithful_rep_specs, t2c_search, theorem_classifier

__all__ = [
    "ClosureResult",
    "OrbitalPartition",
    "PermGroup",
    "Permutation",
    "RepSpec",
    "StructureReport",
    "T2CVerdict",
    "compose",
    "faithful_rep_specs",
    "is_2closed",
    "materialize",
    "orbital_partition",
    "parse_group_spec",
    "parse_permutation",
    "rank",
    "structure_report",
    "t2c_search",
    "theorem_classifier",
    "two_closure",
    "two_closure_bruteforce",
    "wielandt_membership",
]
