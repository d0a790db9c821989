"""Exact Euler characteristics of finite categories and of their barycentric subdivisions."""

from importlib import resources

from .category import (
    CategoryError,
    CategorySpec,
    FinCategory,
    cyclic_group,
    discrete,
    from_monoid,
    from_poset,
    from_relation,
    is_acyclic,
    is_poset,
    load,
    parse,
    serialize,
    validate,
)
from .euler import (
    FilteredFinite,
    NaturalNumbers,
    SubdivisionFiltration,
    check_invariance,
    chi_fil,
    chi_series,
    f_chi_prefix,
    filtered_counts,
    per_chain_divisibility,
)
from .hanaki import HanakiInstance, hanaki_exhaustive, hanaki_stats
from .nerve import Chain, enumerate_nondegenerate_chains, hom_count_matrix, nondegenerate_counts
from .series import (
    NoCertificate,
    PoleAtMinusOne,
    Polynomial,
    RationalFunction,
    eval_at_minus_one,
    fit_rational,
    resolvent_series,
)
from .subdivision import BudgetExceeded, sd_compose, sd_hom, sd_objects_at_level, sd_truncate, verify_section3

FIXTURES = ("arrow", "z2", "z3", "chain3", "boolean2", "parallel")


def fixture_path(name: str):
    """Path of a shipped fixture, by bare name (``"z2"``) or file name (``"z2.cat"``)."""
    stem = name[:-4] if name.endswith(".cat") else name
    if stem not in FIXTURES:
        raise KeyError(name)
    return resources.files(__name__) / "fixtures" / f"{stem}.cat"


def load_fixture(name: str) -> FinCategory:
    return parse_and_validate(fixture_path(name).read_text(encoding="utf-8"))


def parse_and_validate(text: str) -> FinCategory:
    return validate(parse(text))

