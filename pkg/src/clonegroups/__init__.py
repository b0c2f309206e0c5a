"""Thompson-like groups from d-ary cloning systems."""

from .core import (
    CloningSystem,
    Element,
    InstanceMismatch,
    NotApplicable,
    commutes,
    conjugate,
    equals,
    expand,
    invert,
    is_identity,
    multiply,
    parse_element,
    reduce,
)
from .braids import instance_bF, instance_bV
from .matrices import Ring, instance_Abels, instance_B, instance_Bbar
from .perms import instance_F, instance_V, instance_Vhat
from .products import instance_Pi, instance_Psi, instance_ZInf
from .registry import build_instance
from .trees import Tree, parse_tree

__version__ = "0.1.0"
