"""Exact computations with finite-dimensional Novikov algebras."""

from .algebra import (
    Algebra,
    AlgebraError,
    Element,
    Verdict,
    associator,
    commutator,
    is_novikov,
    make_algebra,
    multiply,
    right_normed_product,
)
from .constructions import (
    DifferentialAlgebra,
    NotNovikovError,
    SplitExtensionSpec,
    binomial_mishchenko,
    binomial_truncated_witt,
    build,
    example1,
    gelfand_dorfman,
    mishchenko,
    split_extension,
    truncated_witt,
)
from .identities import CATALOG, check_identity, get_identity, is_lie_metabelian, parse_identity
from .io import read_definition, write_definition
from .scalar import QQ, Field, make_field
from .series import classify, derived_series, lie_derived_series, power_series, right_power_series
from .subspaces import Subspace, associator_space, commutator_space, ideal_closure, is_ideal, span
from .suite import default_corpus, run_corpus, run_suite

__version__ = "0.1.0"
