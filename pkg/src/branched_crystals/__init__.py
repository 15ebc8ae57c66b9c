"""Branched crystals for quantized sl2: canonical families, the tensor product rule,
decomposition into indecomposables, closed-form tables and module-side bookkeeping."""
from .core import (
    Atom,
    CrystalError,
    CrystalLabel,
    IterationCapExceeded,
    M,
    Msigma,
    Node,
    PAREN,
    PLAIN,
    Pair,
    ShapeError,
    T,
    Tensor,
    V,
    above_branch_point,
    crystal,
    e_step,
    epsilon,
    f_step,
    is_branch_point,
    phi,
    psi,
    tensor,
    weight,
)
from .tensor import Rule, e_rule, f_rule, tensor_e, tensor_f
from .decompose import Decomposition, WeightWindow, WindowExhausted, decompose, enumerate_elements, head_of
from .axioms import check_axioms
from .tables import dual_label, oracle_decompose
from .category_o import ModuleSum, character, crystal_of, module_tensor

__all__ = [
    "Atom", "CrystalError", "CrystalLabel", "IterationCapExceeded", "M", "Msigma", "Node", "PAREN",
    "PLAIN", "Pair", "ShapeError", "T", "Tensor", "V", "above_branch_point", "crystal", "e_step",
    "epsilon", "f_step", "is_branch_point", "phi", "psi", "tensor", "weight",
    "Rule", "e_rule", "f_rule", "tensor_e", "tensor_f",
    "Decomposition", "WeightWindow", "WindowExhausted", "decompose", "enumerate_elements", "head_of",
    "check_axioms", "dual_label", "oracle_decompose",
    "ModuleSum", "character", "crystal_of", "module_tensor",
]
