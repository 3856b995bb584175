"""Exact Witten genera and twisted Spin^c indices of generalized complete intersections."""

from .charclass import (
    LineBundleSum, RootBundle, a_hat, c1, euler, pontryagin_p1, q1, q2, q3, tangent_bundle, w2,
)
from .cohomology import (
    CohomClass, IntClass, ManifoldModel, Metadata, ModelError, ModelMismatchError, Relation,
    integrate, load_model, mod2, multiply, reduce,
)
from .conditions import (
    ConditionReport, check_string_gci, classify_theorem, fano_c1_check, search_string,
)
from .families import bott_tower, point, projective_product
from .genus import (
    DualPathMismatch, GenusResult, NotSpinError, SpinCError, elliptic, phi_c, witten,
    witten_of_gci,
)
from .kernel import BACKEND
from .modular import eisenstein, modular_fit
from .qseries import InversionError, QSeries, exp_nilpotent, qs_invert, qs_mul

__all__ = [
    "BACKEND", "CohomClass", "ConditionReport", "DualPathMismatch", "GenusResult", "IntClass",
    "InversionError", "LineBundleSum", "ManifoldModel", "Metadata", "ModelError",
    "ModelMismatchError", "NotSpinError", "QSeries", "Relation", "RootBundle", "SpinCError",
    "a_hat", "bott_tower", "c1", "check_string_gci", "classify_theorem", "eisenstein",
    "elliptic", "euler", "exp_nilpotent", "fano_c1_check", "integrate", "load_model", "mod2",
    "modular_fit", "multiply", "phi_c", "point", "pontryagin_p1", "projective_product", "q1",
    "q2", "q3", "qs_invert", "qs_mul", "reduce", "search_string", "tangent_bundle", "w2",
    "witten", "witten_of_gci",
]
