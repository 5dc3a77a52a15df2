"""Eigenspace projection and solvability transfer from a base field without
p-th roots of unity.

The small base has constants F_q0 with p not dividing q0 - 1; adjoining xi_p
multiplies the constants field by the even order d of q0 mod p.  The lifted
arena is the ramified one over q0^d.  The auxiliary involution eps is the
q0-power Frobenius on constants composed with s -> 1/s: this is the unique
(up to the constant twist of s) automorphism of order d that commutes with
sigma, which the projection formula requires; the Frobenius fixing s fails to
commute.  On classes, eps scales xi_p by t = q0 mod p, and

    T = z * sum_{m=1..d} t^(d-m) eps^(m-1),      z*d*t^(d-1) = 1 mod p,

is an idempotent commuting with the sigma action; its image is the
t-eigenspace of eps, the twist residue e is preserved by T and killed by
1 - T.  Transfer of a solved instance projects the witness class by T and
re-verifies the two projection identities: the projected witness still maps
onto the projected base class under rho^(i-j), and its twist residue is
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kummer, linalg
from . import polynomials as pl
from .arena import Arena, ArenaError, FieldElement, make_arena, _factor_prime_power
from .embedding import EmbeddingProblem, SolveReport, solve_nonsplit, solve_split
from .group_algebra import is_odd_prime
from .kummer import KummerClass, SupportSpace


class DescentError(ValueError):
    pass


@dataclass(frozen=True)
class DescentConfig:
    p: int
    q0: int
    d_eps: int
    t_eig: int
    z: int
    arena: Arena
    frob_power: int  # eps applies the p0^frob_power Frobenius on constants


def make_descent(p: int, q0: int) -> DescentConfig:
    if not is_odd_prime(p):
        raise DescentError(f"p must be an odd prime, got {p}")
    p0, m0 = _factor_prime_power(q0)
    if (q0 - 1) % p == 0:
        raise DescentError("descent requires p not dividing q0 - 1")
    if q0 % p == 0:
        raise DescentError("descent requires characteristic different from p")
    d = 1
    acc = q0 % p
    while acc != 1:
        acc = acc * q0 % p
        d += 1
    if d % 2 != 0:
        raise DescentError(
            f"the ramified lift admits a sigma-commuting eps only for even order; "
            f"q0={q0} has order {d} mod {p}")
    arena = make_arena(p, q0 ** d, "R")
    t_eig = q0 % p
    z = pow(d * pow(t_eig, d - 1, p) % p, -1, p)
    cfg = DescentConfig(p=p, q0=q0, d_eps=d, t_eig=t_eig, z=z, arena=arena,
                        frob_power=m0)
    _sanity_check(cfg)
    return cfg


def eps_element(cfg: DescentConfig, x: FieldElement) -> FieldElement:
    """The involution on K: q0-power Frobenius on constants, s -> 1/s."""
    arena = cfg.arena
    ff = arena.ff

    def rev_frob(h: pl.Poly) -> pl.Poly:
        return pl.normalize([ff.frobenius(c, cfg.frob_power) if c else 0
                             for c in reversed(h)])

    num, den = x.expand()
    dn, dd = pl.deg(num), pl.deg(den)
    mono_dd = pl.normalize([0] * dd + [1])
    mono_dn = pl.normalize([0] * dn + [1])
    return arena.from_rational(pl.mul(ff, rev_frob(num), mono_dd),
                               pl.mul(ff, rev_frob(den), mono_dn))


def _sanity_check(cfg: DescentConfig) -> None:
    arena = cfg.arena
    xi = arena.from_constant(arena.xi)
    if eps_element(cfg, xi) != arena.from_constant(arena.ff.pow(arena.xi, cfg.t_eig)):
        raise AssertionError("eps does not scale xi_p by t")
    samples = [arena.a_root, arena.from_poly((arena.ff.q - 1, 1)),
               arena.from_constant(arena.gen)]
    for x in samples:
        if eps_element(cfg, eps_element(cfg, x)) != x:
            raise AssertionError("eps is not an involution")
        if eps_element(cfg, arena.sigma(x)) != arena.sigma(eps_element(cfg, x)):
            raise AssertionError("eps does not commute with sigma")


def eps_closed_space(cfg: DescentConfig, elements) -> SupportSpace:
    return kummer.closure_space(cfg.arena, elements,
                                extra_maps=(lambda el: eps_element(cfg, el),))


def eps_matrix(cfg: DescentConfig, space: SupportSpace) -> np.ndarray:
    """Matrix of eps on the class space (requires an eps-closed space)."""
    cols = []
    dim = space.dim
    for j in range(dim):
        vec = [0] * dim
        vec[j] = 1
        img = eps_element(cfg, kummer.lift(space, vec))
        cols.append(kummer.class_of(space, img).vec)
    mat = np.array(cols, dtype=np.int64).T % space.p
    sig = space.sigma()
    if not np.array_equal((mat @ sig) % space.p, (sig @ mat) % space.p):
        raise AssertionError("eps matrix does not commute with sigma on the space")
    if not np.array_equal(linalg.mat_pow(mat, cfg.d_eps, space.p),
                          np.eye(dim, dtype=np.int64)):
        raise AssertionError("eps matrix is not of order d on the space")
    return mat


def projector_matrix(cfg: DescentConfig, space: SupportSpace) -> np.ndarray:
    """T = z * sum t^(d-m) eps^(m-1) on the class space."""
    p = space.p
    emat = eps_matrix(cfg, space)
    dim = space.dim
    total = np.zeros((dim, dim), dtype=np.int64)
    power = np.eye(dim, dtype=np.int64)
    for m in range(1, cfg.d_eps + 1):
        coeff = pow(cfg.t_eig, cfg.d_eps - m, p)
        total = (total + coeff * power) % p
        power = (power @ emat) % p
    return (cfg.z * total) % p


def project_eigen(cfg: DescentConfig, space: SupportSpace, c: KummerClass) -> KummerClass:
    """T applied to a class of an eps-closed space."""
    tmat = projector_matrix(cfg, space)
    vec = (tmat @ c.array()) % space.p
    return KummerClass(space, tuple(int(a) for a in vec))


@dataclass(frozen=True)
class TransferReport:
    verdict: bool
    base_report: SolveReport
    projected_class: tuple | None
    projected_element: FieldElement | None
    agreement: bool | None
    details: dict


def _require_small_coefficients(cfg: DescentConfig, x: FieldElement) -> None:
    ff = cfg.arena.ff
    num, den = x.expand()
    for h in (num, den):
        for c in h:
            if c and not ff.in_subfield(c, cfg.q0):
                raise DescentError(
                    "gamma0 must have coefficients in the small constants field")


def transfer_check(cfg: DescentConfig, gamma0: FieldElement, i: int, j: int,
                   kind: str, f: FieldElement | None = None) -> TransferReport:
    """Solve the instance over the lifted arena; on success project the witness
    class by T and re-verify the projection identities (image under rho^(i-j)
    equals the projected base class; twist residue preserved)."""
    arena = cfg.arena
    _require_small_coefficients(cfg, gamma0)
    prob = EmbeddingProblem(arena, gamma0, i, j, kind)
    report = solve_split(prob, f) if kind == "split" else solve_nonsplit(prob, f)
    if not report.solvable:
        space = eps_closed_space(cfg, [gamma0])
        g = kummer.class_of(space, gamma0)
        tg = project_eigen(cfg, space, g)
        if tg.is_zero():
            # the base class lies in the complement summand; the projected
            # problem carries no content
            agreement = None
            details = {"projected_base_class": tg.vec, "degenerate": True}
        else:
            still_blocked = linalg.lex_least_solution(
                space.rho_power(cfg.p - j), tg.array(), cfg.p) is None
            agreement = still_blocked
            details = {"projected_base_class": tg.vec, "still_blocked": still_blocked}
        return TransferReport(False, report, None, None, agreement, details)

    space = eps_closed_space(cfg, [gamma0, report.beta, *report.tower.generators])
    delta = kummer.class_of(space, report.beta)
    g = kummer.class_of(space, gamma0)
    tdelta = project_eigen(cfg, space, delta)
    tg = project_eigen(cfg, space, g)

    image_ok = kummer.rho_apply(space, tdelta, i - j).vec == tg.vec
    if i < cfg.p:
        e_orig = arena.index_of(report.beta)
        e_proj = arena.index_of(kummer.lift(space, tdelta.vec))
        index_ok = e_orig == e_proj
    else:
        e_orig = e_proj = None
        index_ok = True
    agreement = image_ok and index_ok
    details = {
        "projected_base_class": tg.vec,
        "image_identity": image_ok,
        "twist_original": e_orig,
        "twist_projected": e_proj,
        "twist_identity": index_ok,
    }
    return TransferReport(True, report, tdelta.vec, kummer.lift(space, tdelta.vec),
                          agreement, details)
