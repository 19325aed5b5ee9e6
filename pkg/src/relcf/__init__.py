"""Ring-valued constructible functions on finite regular cell complexes.

Exact, integer-only Euler calculus: declared value rings, face-poset
complexes, the cellwise function algebra with Moebius bases and Verdier
duality, virtual sheaves with index normal forms, and kernel transforms.
"""

from .cellspace import (
    CellComplex,
    CellSet,
    CellularMap,
    LocallyClosedSet,
    ProductComplex,
    closure,
    euler_cs,
    open_star,
    pair_id,
    product,
    validate,
)
from .cfun import (
    CFunction,
    cf_add,
    cf_mul,
    cf_neg,
    cf_scale,
    const_fn,
    extend_by_zero,
    external_product,
    from_closed_basis,
    from_values,
    indicator,
    integrate,
    pullback,
    pushforward_proj,
    to_closed_basis,
    to_open_basis,
    verdier_dual,
    zero_fn,
)
from .errors import RelcfError
from .kring import (
    INT,
    ZZ2,
    AbelianGroup,
    Integers,
    ProductRing,
    RingValue,
    TruncatedCurve,
    fm_value,
    ring_add,
    ring_dual,
    ring_mul,
    ring_neg,
    ring_one,
    ring_scale,
    ring_zero,
)
from .ksheaf import (
    CellwiseComplex,
    ElementaryTerm,
    VirtualSheaf,
    chi,
    chi_of_cellwise,
    dual_sheaf,
    k_equal,
    normal_form,
    realize,
    split_term,
    tensor,
    unit_sheaf,
)
from .xform import (
    IncidenceGeometry,
    Kernel,
    OperatorMatrix,
    compose_kernels,
    diagonal_kernel,
    fano_plane,
    fm_transform,
    incidence_kernel,
    line_complex,
    operator_matrix,
    point_complex,
    radon_pair,
    transform,
)

__version__ = "0.1.0"
