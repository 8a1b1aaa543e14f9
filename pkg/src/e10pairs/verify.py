"""Named verification suites with a machine-readable report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from . import e10
from .arith import d_profile, zeta_d
from .errors import DomainError
from .genus import genus_exists, genus_of_gram, predicted_K_genus, predicted_L_symbols, GenusSymbol
from .interval import pi_fourth, sqrt_interval
from .lattice import (
    anti_isometries,
    det_signature,
    discriminant_form,
    generated_group,
    glue_lattice,
    is_even,
    o_action_on_disc,
)
from .mass import mass_closed_form, mass_stepwise
from .padic import PAdicSymbol, jordan_symbol, symbol_invariants

SUITES = ("lemma1", "lemma2", "lemma4", "theorem1")


@dataclass
class Envelope:
    k_max: int = 200
    max_height: int = 4
    max_word_len: int = 30
    pipeline_ks: tuple[int, ...] = (3, 4, 5, 6, 7)
    embeddings_per_k: int = 3
    disc_k_max: int = 50


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "detail": self.detail,
        }


@dataclass
class Report:
    suite: str
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> str | None:
        return next((r.name for r in self.results if not r.passed), None)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "properties": [r.to_dict() for r in self.results],
        }


def _run(name: str, fn: Callable[[], tuple[int, list[str]]]) -> PropertyResult:
    t = time.perf_counter()
    checked, failures = fn()
    detail = "; ".join(failures[:5]) + (f" (+{len(failures) - 5} more)" if len(failures) > 5 else "")
    return PropertyResult(name, not failures, checked, detail, time.perf_counter() - t)


# -- suite lemma1: roots are the norm-2 vectors ----------------------------------


def check_e10_gram() -> tuple[int, list[str]]:
    g = e10.e10_gram()
    fails = []
    if det_signature(g) != (-1, (9, 1)):
        fails.append(f"det/signature {det_signature(g)}")
    if any(g[i][i] != 2 for i in range(10)):
        fails.append("diagonal is not 2")
    if not is_even(g):
        fails.append("not even")
    return 1, fails


def check_root_enumeration(H: int) -> tuple[int, list[str]]:
    fails = []
    for h in range(1, H + 1):
        if e10.enumerate_roots(h) != e10.roots_by_exhaustion(h):
            fails.append(f"closure and exhaustive search differ at H={h}")
    return H, fails


def check_w_invariance(H: int = 6) -> tuple[int, list[str]]:
    roots = e10.enumerate_roots(H)
    fails = []
    n = 0
    for i in range(10):
        a = e10.simple_root(i)
        for r in roots:
            s = e10.reflect(a, r)
            n += 1
            if not e10.is_root(s):
                fails.append(f"s_{i} {r} is not a root")
            if e10.reflect(a, s) != r:
                fails.append(f"s_{i} is not an involution on {r}")
    for r in roots[:40]:
        for x in roots[:40]:
            for y in roots[:10]:
                if e10.pairing(e10.reflect(r, x), e10.reflect(r, y)) != e10.pairing(x, y):
                    fails.append(f"reflection in {r} is not an isometry")
    return n, fails


# -- suite lemma2: prenilpotent pairs --------------------------------------------------


def check_prenilpotent_envelope(H: int, max_len: int) -> tuple[int, list[str]]:
    roots = e10.enumerate_roots(H)
    fails = []
    n = 0
    for r in roots:
        for r2 in roots:
            if e10.pairing(r, r2) < -1:
                continue
            for sign in (1, -1):
                n += 1
                w = e10.positivity_search(r, r2, sign, max_len)
                if w is None:
                    fails.append(f"no word for {r}, {r2}, sign {sign}")
                    continue
                a, b = e10.apply_word(w, r), e10.apply_word(w, r2)
                test = e10.is_positive if sign > 0 else e10.is_negative
                if not (test(a) and test(b)) or len(w) > max_len:
                    fails.append(f"bad word {w} for {r}, {r2}")
    return n, fails


def check_minus_two(H: int) -> tuple[int, list[str]]:
    roots = e10.enumerate_roots(H)
    fails = []
    n = 0
    for r in roots:
        for r2 in roots:
            if e10.pairing(r, r2) == -2:
                n += 1
                if r2 != tuple(-x for x in r):
                    fails.append(f"{r}, {r2} have inner product -2 but r' != -r")
                if e10.is_prenilpotent(r, r2):
                    fails.append(f"{r}, {r2} reported prenilpotent")
    return n, fails


# -- suite lemma4: symbols, genus, mass, gluing ------------------------------------------


def mutations(s: PAdicSymbol) -> list[PAdicSymbol]:
    """Flip one sign, or move one type I subscript by 4."""
    out = []
    cs = s.constituents
    for i, c in enumerate(cs):
        out.append(PAdicSymbol(s.p, cs[:i] + (c.with_sign(-c.sign),) + cs[i + 1 :]))
        if c.is_odd:
            out.append(PAdicSymbol(s.p, cs[:i] + (replace(c, subscript=c.subscript + 4),) + cs[i + 1 :]))
    return out


def check_genus_existence(k_max: int) -> tuple[int, list[str]]:
    fails = []
    n = 0
    for k in range(3, k_max + 1):
        g = predicted_K_genus(k)
        n += 1
        if not genus_exists(g):
            fails.append(f"k={k}: predicted genus fails the existence conditions")
        for m in mutations(g.locals[2]):
            n += 1
            if genus_exists(GenusSymbol(g.dim, g.signature, g.det, {**g.locals, 2: m})):
                fails.append(f"k={k}: mutation {m} still passes")
    return n, fails


def check_L_symbols(k_max: int) -> tuple[int, list[str]]:
    fails = []
    n = 0
    for k in range(3, k_max + 1):
        for p, want in predicted_L_symbols(k).items():
            n += 1
            got = jordan_symbol(((2, k), (k, 2)), p)
            if symbol_invariants(got) != symbol_invariants(want):
                fails.append(f"k={k}, p={p}: got {got}, predicted {want}")
    return n, fails


def check_mass_equality(k_max: int, corrected: bool = False) -> tuple[int, list[str]]:
    fails = []
    for k in range(3, k_max + 1):
        a = mass_stepwise(predicted_K_genus(k))
        b = mass_closed_form(k, corrected=corrected)
        if a != b:
            fails.append(f"k={k} ({d_profile(k).e2_case.value}): stepwise {a.coeff}, closed {b.coeff}")
    return k_max - 2, fails


E8_MASS = Fraction(1, 696729600)


def check_e8_anchor() -> tuple[int, list[str]]:
    m = mass_stepwise(genus_of_gram(e10.e8_gram()))
    got = m.exact()
    return 1, [] if got == E8_MASS else [f"E8 mass {got}"]


def check_pipeline(ks: tuple[int, ...], per_k: int) -> tuple[int, list[str]]:
    fails = []
    n = 0
    for k in ks:
        pairs = e10.construct_pairs(k, per_k)
        if len(pairs) < per_k:
            fails.append(f"k={k}: only {len(pairs)} saturated pairs constructed")
        want = predicted_K_genus(k)
        L = ((2, k), (k, 2))
        for p in pairs:
            n += 1
            K = e10.complement_of_pair(p)
            if det_signature(K) != (k * k - 4, (8, 0)) or not is_even(K):
                fails.append(f"k={k}: complement of {p.r2} has det/signature {det_signature(K)}")
                continue
            got = genus_of_gram(K)
            if set(got.locals) != set(want.locals) or any(
                symbol_invariants(got.locals[q]) != symbol_invariants(want.locals[q]) for q in want.locals
            ):
                fails.append(f"k={k}: complement genus {got} differs from prediction")
            glues = anti_isometries(discriminant_form(L), discriminant_form(K))
            if not glues:
                fails.append(f"k={k}: discriminant forms are not anti-isometric")
            for f in glues:
                M = glue_lattice(L, K, f)
                if det_signature(M) != (-1, (9, 1)) or not is_even(M):
                    fails.append(f"k={k}: glued lattice has det/signature {det_signature(M)}")
    return n, fails


def check_disc_action(k_max: int) -> tuple[int, list[str]]:
    fails = []
    for k in range(3, k_max + 1):
        L = ((2, k), (k, 2))
        maps = {name: o_action_on_disc(L, m) for name, m in e10.pair_isometries(k).items()}
        for name in ("reflection_r", "reflection_r2"):
            if not maps[name].is_identity():
                fails.append(f"k={k}: {name} acts nontrivially")
        order = len(generated_group(list(maps.values())))
        if order > 4:
            fails.append(f"k={k}: image of O(L) has order {order}")
    return k_max - 2, fails


# -- suite theorem1: the orbit bound ---------------------------------------------


def check_constant() -> tuple[int, list[str]]:
    c = e10.bound_coefficient()
    fails = []
    if not (c.lo >= Fraction(217, 10**21) and c.hi <= Fraction(219, 10**21)):
        fails.append(f"constant {c} outside [2.17e-19, 2.19e-19]")
    if not c.lo > Fraction(21, 10**20):
        fails.append(f"constant {c} not above 2.1e-19")
    return 1, fails


def check_zeta_bound(k_max: int) -> tuple[int, list[str]]:
    floor = 2 - pi_fourth(Fraction(1, 10**20)) / 90
    fails = []
    for k in range(3, k_max + 1):
        d = k * k - 4
        z = zeta_d(d, 4, Fraction(1, 10**12))
        if not z > floor:
            fails.append(f"k={k}: zeta_d(4) {z} not above 2 - pi^4/90")
    return k_max - 2, fails


def check_weyl_order() -> tuple[int, list[str]]:
    w = e10.weyl_group_order(e10.e8_gram())
    fails = []
    if w != e10.W_E8_ORDER:
        fails.append(f"orbit-stabilizer gives {w}")
    if e10.degree_product() != e10.W_E8_ORDER:
        fails.append("product of degrees differs")
    return 2, fails


def check_small_k() -> tuple[int, list[str]]:
    fails = []
    for k in (1, 2):
        b = e10.n_lower_bound(k)
        if not b.positive or b.bound is not None:
            fails.append(f"k={k}: expected a bare positivity statement")
    for k in range(3, 11):
        b = e10.n_lower_bound(k)
        d = k * k - 4
        floor = Fraction(21, 10**20) * d**3 * sqrt_interval(d, Fraction(1, 10**9)).hi
        if b.bound is None or not b.bound.lo > floor:
            fails.append(f"k={k}: bound {b.bound} too small")
    return 10, fails


# -- suites -----------------------------------------------------------------------


def run_suite(name: str, env: Envelope | None = None) -> Report:
    env = env or Envelope()
    checks: dict[str, list[tuple[str, Callable[[], tuple[int, list[str]]]]]] = {
        "lemma1": [
            ("e10_gram", check_e10_gram),
            ("root_enumeration", lambda: check_root_enumeration(env.max_height)),
            ("w_invariance", check_w_invariance),
        ],
        "lemma2": [
            ("prenilpotent_envelope", lambda: check_prenilpotent_envelope(env.max_height, env.max_word_len)),
            ("minus_two_is_negation", lambda: check_minus_two(env.max_height)),
        ],
        "lemma4": [
            ("genus_existence", lambda: check_genus_existence(env.k_max)),
            ("L_symbols", lambda: check_L_symbols(env.k_max)),
            ("mass_stepwise_vs_closed", lambda: check_mass_equality(env.k_max)),
            ("mass_stepwise_vs_corrected_closed", lambda: check_mass_equality(env.k_max, corrected=True)),
            ("e8_anchor", check_e8_anchor),
            ("embedding_pipeline", lambda: check_pipeline(env.pipeline_ks, env.embeddings_per_k)),
            ("discriminant_action", lambda: check_disc_action(env.disc_k_max)),
        ],
        "theorem1": [
            ("constant", check_constant),
            ("zeta_bound", lambda: check_zeta_bound(env.k_max)),
            ("weyl_order", check_weyl_order),
            ("small_k_and_instances", check_small_k),
        ],
    }
    if name not in checks:
        raise DomainError(f"unknown suite {name!r}")
    report = Report(name)
    for prop, fn in checks[name]:
        report.results.append(_run(prop, fn))
    return report


def run_all(env: Envelope | None = None) -> list[Report]:
    return [run_suite(s, env) for s in SUITES]
