"""Exact arithmetic for finitely generated monoids inside abelian groups.

The package computes saturations, Hilbert bases, Kummer-type covers and
their pushouts, closed-form cohomological invariants, and runs exactness
checks on the associated monoid algebras.  All arithmetic is integer or
rational and exact.
"""

from .errors import (
    DimensionMismatchError,
    IllDefinedMapError,
    InconsistentActionError,
    InputError,
    LogMonoidError,
    MembershipError,
    MismatchedBaseError,
    NonPointedConeError,
    NotKummerError,
    NotSaturatedError,
    TorsionError,
    UngradedMonoidError,
)
from .lattice import (
    FgAbelianGroup,
    GroupElement,
    GroupHom,
    GroupStructure,
    IntMatrix,
    cokernel,
    ext1,
    hermite_normal_form,
    hom_to_cyclic,
    invariant_factors_from_orders,
    kernel_is_trivial,
    smith_normal_form,
)
from .monoid import Grading, Monoid, free_monoid, hilbert_basis, numeric_monoid
from .morphism import KummerCheck, KummerEntry, MonoidHom, gp_cokernel, is_kummer
from .fscat import (
    BaseChangeReport,
    FsPushout,
    GpCopy,
    RootSection,
    SelfProductReport,
    gp_presented_copy,
    kummer_base_change,
    kummer_root,
    pushout_fs,
    pushout_int,
    root_by_section,
    self_product_check,
    split_model,
)
from .cech import (
    CochainComplexReport,
    MonoidAlgebraElement,
    equalizer_check,
    gmlog_complex,
    group_h1,
    splitting_check,
)
from .invariants import (
    BundleClass,
    FiniteGroupTable,
    GroupSchemeDescriptor,
    H1Structure,
    HomClasses,
    ProfiniteDescriptor,
    QmodZElement,
    bundle_class,
    direct_sum,
    h1_finite_group,
    h1_kummer,
    is_classical,
    pi1_log,
    r1_eps_fiber,
)

__version__ = "0.1.0"
