"""Exact Cartan matrix engine for almost affine Lie (super)algebras."""

__version__ = "0.1.0"

from .cartan import (  # noqa: E402
    EVEN,
    ODD,
    CartanPair,
    NodeKind,
    canonical_form,
    decompose,
    is_symmetrizable,
    normalize,
    pair_from_doc,
    pair_to_doc,
    principal_delete,
)
from .catalog import (  # noqa: E402
    Catalog,
    Classification,
    build_catalog,
    classify_blocks,
    classify_component,
    default_catalog,
    even_part,
    vinberg_class,
)
from .reflect import Limits, OrbitClass, OverflowReport, odd_reflect, reflection_orbit  # noqa: E402
from .search import (  # noqa: E402
    AlmostAffineVerdict,
    EnumerationResult,
    almost_affine_class_test,
    almost_affine_matrix_test,
    classify_rank2,
    enumerate_classes,
    solve_parametric_rank3,
)

__all__ = [
    "EVEN", "ODD", "CartanPair", "NodeKind", "canonical_form", "decompose", "is_symmetrizable",
    "normalize", "pair_from_doc", "pair_to_doc", "principal_delete", "Catalog", "Classification",
    "build_catalog", "classify_blocks", "classify_component", "default_catalog", "even_part",
    "vinberg_class", "Limits", "OrbitClass", "OverflowReport", "odd_reflect", "reflection_orbit",
    "AlmostAffineVerdict", "EnumerationResult", "almost_affine_class_test",
    "almost_affine_matrix_test", "classify_rank2", "enumerate_classes", "solve_parametric_rank3",
]
