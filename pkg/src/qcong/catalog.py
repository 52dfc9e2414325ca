"""Machine-readable catalog of congruence claims.

A claim family has parameters (k, r, ell, m, residue, ...).  An instance fixes
them and produces

    value(n) = sum_i c_i * seq(A_i * t + B_i)

which must vanish modulo ell^exponent for every window point t passing the
side condition.  Most claims have a single term with c = 1; relation claims
(three-term spt recurrences, the ell || n Hecke relation) have more.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import InvalidParameter
from .numtheory import delta, gamma, kronecker

# exponent of ell allowed in the progression step for default instances
K_MAX = {5: 3, 7: 2, 11: 2, 13: 2}

@dataclass(frozen=True)
class Instance:
    claim: str
    params: tuple  # sorted (name, value) pairs
    sequence: str
    ell: int
    exponent: int
    terms: tuple  # ((coeff, A, B), ...)
    side: Callable[[int], bool] | None = None
    n_of_t: Callable[[int], int] | None = None
    n_max: int | None = None

    @property
    def modulus(self) -> int:
        return self.ell ** max(self.exponent, 0)

    @property
    def step(self) -> int:
        return max(a for _, a, _ in self.terms)

    def param_dict(self) -> dict:
        return dict(self.params)

    def max_index(self, n_max: int) -> int:
        return max(a * (n_max - 1) + b for _, a, b in self.terms)

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.claim}[{inner}]" if inner else self.claim


@dataclass(frozen=True)
class CongruenceClaim:
    id: str
    sequence: str
    ell: int | None
    statement: str
    build: Callable[..., Instance] = field(repr=False, compare=False)
    defaults: tuple = ()  # tuple of param dicts (as sorted tuples)
    side_text: str | None = None
    tags: tuple = ()

    def instance(self, **params) -> Instance:
        return self.build(**params)

    def default_instances(self) -> list[Instance]:
        return [self.build(**dict(p)) for p in self.defaults]

    def matches(self, flt: str | None) -> bool:
        """Filter grammar: comma-separated key=value or substring terms, all must hold."""
        if not flt:
            return True
        for part in flt.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" in part:
                key, val = (s.strip() for s in part.split("=", 1))
                if key in ("ell", "l"):
                    if str(self.ell) != val:
                        return False
                elif key == "seq":
                    if self.sequence != val:
                        return False
                elif key == "tag":
                    if val not in self.tags:
                        return False
                elif key == "id":
                    if self.id != val:
                        return False
                else:
                    return False
            elif part not in self.id:
                return False
        return True


def _p(**kw) -> tuple:
    return tuple(sorted(kw.items()))


def _kgrid(ell: int, scale: int = 1, kmin: int = 1) -> tuple:
    """k values with ell^(scale*k) within the default step budget (at least kmin)."""
    ks = [k for k in range(kmin, K_MAX[ell] + 1) if scale * k <= K_MAX[ell]]
    return tuple(_p(k=k) for k in (ks or [kmin]))


_CATALOG: list[CongruenceClaim] = []


def _add(claim: CongruenceClaim):
    if any(c.id == claim.id for c in _CATALOG):
        raise ValueError(f"duplicate claim id {claim.id}")
    _CATALOG.append(claim)


def _power_family(cid, seq, ell, exp_of_k, statement, scale=1, kmin=1, tags=()):
    """seq(ell^(scale*k) n + delta_{ell, scale*k}) = 0 mod ell^exp_of_k(k).

    Claims tagged 'variant' (restatements that differ from the main statement)
    have no default instances; they are verified only on request.
    """

    def build(k: int, _cid=cid):
        if k < kmin:
            raise InvalidParameter(f"{_cid} needs k >= {kmin}")
        a = ell ** (scale * k)
        return Instance(_cid, _p(k=k), seq, ell, exp_of_k(k), ((1, a, delta(ell, scale * k)),))

    defaults = () if "variant" in tags else _kgrid(ell, scale, kmin)
    _add(CongruenceClaim(cid, seq, ell, statement, build, defaults, tags=tags))


def _residue_family(cid, seq, ell, step, residues, exponent, statement, tags=()):
    def build(r: int, _cid=cid):
        if r not in residues:
            raise InvalidParameter(f"{_cid}: residue must be one of {residues}")
        return Instance(_cid, _p(r=r), seq, ell, exponent, ((1, step, r),))

    _add(CongruenceClaim(cid, seq, ell, statement, build, tuple(_p(r=r) for r in residues), tags=tags))


def _single(cid, seq, ell, step, offset, exponent, statement, n_max=None, tags=()):
    def build(_cid=cid):
        return Instance(_cid, (), seq, ell, exponent, ((1, step, offset),), n_max=n_max)

    _add(CongruenceClaim(cid, seq, ell, statement, build, ((),), tags=tags))


# ---- partitions ------------------------------------------------------------------

_power_family("pn-mod5", "p", 5, lambda k: k, "p(5^k n + d_{5,k}) = 0 mod 5^k", tags=("partition",))
_power_family("pn-mod7", "p", 7, lambda k: k // 2 + 1, "p(7^k n + d_{7,k}) = 0 mod 7^(floor(k/2)+1)",
              tags=("partition",))
_power_family("pn-mod11", "p", 11, lambda k: k, "p(11^k n + d_{11,k}) = 0 mod 11^k", tags=("partition",))

# ---- spt -------------------------------------------------------------------------

_single("spt-mod5", "spt", 5, 5, 4, 1, "spt(5n+4) = 0 mod 5", tags=("spt",))
_single("spt-mod7", "spt", 7, 7, 5, 1, "spt(7n+5) = 0 mod 7", tags=("spt",))
_single("spt-mod13", "spt", 13, 13, 6, 1, "spt(13n+6) = 0 mod 13", tags=("spt",))


def _ono(ell: int):
    if ell < 5 or ell not in (5, 7, 11, 13, 17, 19, 23):
        raise InvalidParameter("ell must be a prime >= 5 (up to 23 supported)")
    return Instance("spt-ono", _p(ell=ell), "spt", ell, 1,
                    ((1, ell * ell, -(ell * ell - 1) // 24),),
                    side=lambda n, _l=ell: kronecker(1 - 24 * n, _l) == 1)


_add(CongruenceClaim("spt-ono", "spt", None,
                     "spt(ell^2 n - (ell^2-1)/24) = 0 mod ell when ((1-24n)/ell) = 1",
                     _ono, tuple(_p(ell=l) for l in (5, 7, 11, 13)),
                     side_text="kronecker(1-24n, ell) = 1", tags=("spt",)))


def _spt_power(cid, ell, sign, exp_of_j, statement):
    def build(j: int, _cid=cid):
        if j < 3:
            raise InvalidParameter(f"{_cid} needs j >= 3")
        terms = ((1, ell ** j, delta(ell, j)), (sign * ell, ell ** (j - 2), delta(ell, j - 2)))
        return Instance(_cid, _p(j=j), "spt", ell, exp_of_j(j), terms)

    _add(CongruenceClaim(cid, "spt", ell, statement, build, (_p(j=3),), tags=("spt", "relation")))


_spt_power("spt-5power", 5, 1, lambda j: 2 * j - 3,
           "spt(5^j n + d_{5,j}) + 5 spt(5^(j-2) n + d_{5,j-2}) = 0 mod 5^(2j-3), j >= 3")
_spt_power("spt-7power", 7, 1, lambda j: (3 * j - 2) // 2,
           "spt(7^j n + d_{7,j}) + 7 spt(7^(j-2) n + d_{7,j-2}) = 0 mod 7^floor((3j-2)/2), j >= 3")
_spt_power("spt-13power", 13, -1, lambda j: j - 1,
           "spt(13^j n + d_{13,j}) - 13 spt(13^(j-2) n + d_{13,j-2}) = 0 mod 13^(j-1), j >= 3")


def _spt_general(ell: int, j: int):
    if ell not in (5, 7, 13):
        raise InvalidParameter("ell must be 5, 7 or 13")
    return Instance("spt-general", _p(ell=ell, j=j), "spt", ell, (j + 1) // 2,
                    ((1, ell ** j, delta(ell, j)),))


_add(CongruenceClaim("spt-general", "spt", None, "spt(ell^j n + d_{ell,j}) = 0 mod ell^floor((j+1)/2)",
                     _spt_general,
                     tuple(_p(ell=l, j=j) for l in (5, 7, 13) for j in range(1, K_MAX[l] + 1)),
                     tags=("spt",)))

_power_family("N2-5power", "N2", 5, lambda j: (j + 1) // 2, "N2(5^j n + d_{5,j}) = 0 mod 5^floor((j+1)/2)",
              tags=("moment",))
_power_family("N2-7power", "N2", 7, lambda j: (j + 1) // 2, "N2(7^j n + d_{7,j}) = 0 mod 7^floor((j+1)/2)",
              tags=("moment",))

# ---- classical small-modulus congruences for moments --------------------------------

_residue_family("N2-mod5", "N2", 5, 5, (1, 4), 1, "N2(5n+r) = 0 mod 5, r in {1,4}", tags=("moment",))
_residue_family("eta2-mod5", "eta2", 5, 5, (1, 4), 1, "eta2(5n+r) = 0 mod 5, r in {1,4}", tags=("moment",))
_residue_family("N2-mod7", "N2", 7, 7, (1, 5), 1, "N2(7n+r) = 0 mod 7, r in {1,5}", tags=("moment",))
_residue_family("eta2-mod7", "eta2", 7, 7, (1, 5), 1, "eta2(7n+r) = 0 mod 7, r in {1,5}", tags=("moment",))
_residue_family("N4-mod7", "N4", 7, 7, (1, 5), 1, "N4(7n+r) = 0 mod 7, r in {1,5}", tags=("moment",))
_residue_family("eta4-mod7", "eta4", 7, 7, (1, 5), 1, "eta4(7n+r) = 0 mod 7, r in {1,5}", tags=("moment",))
_residue_family("spt2-mod5", "spt2", 5, 5, (0, 1, 4), 1, "spt2(5n+r) = 0 mod 5, r in {0,1,4}", tags=("spt",))
_residue_family("spt2-mod7", "spt2", 7, 7, (0, 1, 5), 1, "spt2(7n+r) = 0 mod 7, r in {0,1,5}", tags=("spt",))
_residue_family("spt3-mod7", "spt3", 7, 7, (0, 1, 2, 4, 5), 1, "spt3(7n+r) = 0 mod 7, r in {0,1,2,4,5}",
                tags=("spt",))
_single("eta4-mod5", "eta4", 5, 25, 24, 1, "eta4(25n+24) = 0 mod 5", tags=("moment",))
_residue_family("eta6-mod7", "eta6", 7, 49, (19, 33, 40, 47), 1, "eta6(49n+r) = 0 mod 7, r in {19,33,40,47}",
                tags=("moment",))
_single("bgm-eta2-mod11", "eta2", 11, 11 ** 3, 479, 1, "eta2(11^3 n + 479) = 0 mod 11", n_max=20,
        tags=("moment",))
_single("bgm-eta8-mod13", "eta8", 13, 13 ** 2, 162, 1, "eta8(13^2 n + 162) = 0 mod 13", tags=("moment",))

# ---- e_2r: Hecke-operator families ----------------------------------------------------
# These are stated for integers n with ell^(2m) n + 1 = 0 mod 24, i.e. n = 24t + 23.

R_VALUES = (2, 3, 4, 5, 7)


def _hecke_index(ell: int, j: int) -> tuple[int, int]:
    """(A, B) with e((ell^(2j) n + 1)/24) = e(A t + B) for n = 24t + 23."""
    a = ell ** (2 * j)
    return a, (23 * a + 1) // 24


def _n24(t: int) -> int:
    return 24 * t + 23


def _check_r_ell(r, ell):
    if r not in R_VALUES:
        raise InvalidParameter(f"r must be one of {R_VALUES}")
    if ell < 5 or any(ell % d == 0 for d in range(2, int(ell ** 0.5) + 1)):
        raise InvalidParameter("ell must be a prime >= 5")


def _thm_general(r: int, ell: int, m: int):
    _check_r_ell(r, ell)
    a, b = _hecke_index(ell, m)
    return Instance("thm-general", _p(ell=ell, m=m, r=r), f"e{2 * r}", ell, 2 * (r - 1) * m, ((1, a, b),),
                    n_of_t=_n24)


def _thm_2nd_part1(r: int, ell: int, m: int):
    _check_r_ell(r, ell)
    if m not in (1, 2):
        raise InvalidParameter("m must be 1 or 2")
    a, b = _hecke_index(ell, m)
    return Instance("thm-2nd-part1", _p(ell=ell, m=m, r=r), f"e{2 * r}", ell, (4 * r - 3) * m, ((1, a, b),),
                    side=lambda t, _l=ell: kronecker(-_n24(t), _l) == 1, n_of_t=_n24)


def _thm_2nd_part2(r: int, ell: int, m: int):
    # n runs over 24t+23 with ell exactly dividing n; see the notes for why the
    # literal "ell does not divide n" reading cannot hold.
    _check_r_ell(r, ell)
    if m not in (1, 2):
        raise InvalidParameter("m must be 1 or 2")
    a1, b1 = _hecke_index(ell, m)
    a0, b0 = _hecke_index(ell, m - 1)
    c = -kronecker(3, ell) * ell ** (2 * r - 2)
    return Instance("thm-2nd-part2", _p(ell=ell, m=m, r=r), f"e{2 * r}", ell, (4 * r - 3) * m,
                    ((1, a1, b1), (c, a0, b0)),
                    side=lambda t, _l=ell: _n24(t) % _l == 0 and _n24(t) % (_l * _l) != 0, n_of_t=_n24)


_GEN_DEFAULTS = tuple(_p(ell=l, m=m, r=r) for r in R_VALUES for l, m in ((5, 1), (5, 2), (7, 1), (11, 1), (13, 1)))
_2ND_DEFAULTS = tuple(_p(ell=l, m=m, r=r) for r in R_VALUES for l, m in ((5, 1), (5, 2), (7, 1)))

_add(CongruenceClaim("thm-general", "e2r", None,
                     "e_2r((ell^(2m) n + 1)/24) = 0 mod ell^(2(r-1)m), r in {2,3,4,5,7}",
                     _thm_general, _GEN_DEFAULTS, side_text="n = 23 mod 24", tags=("e2r", "hecke")))
_add(CongruenceClaim("thm-2nd-part1", "e2r", None,
                     "e_2r((ell^(2m) n + 1)/24) = 0 mod ell^((4r-3)m) when (-n/ell) = 1, m in {1,2}",
                     _thm_2nd_part1, _2ND_DEFAULTS, side_text="kronecker(-n, ell) = 1", tags=("e2r", "hecke")))
_add(CongruenceClaim("thm-2nd-part2", "e2r", None,
                     "e_2r((ell^(2m) n + 1)/24) = (3/ell) ell^(2r-2) e_2r((ell^(2m-2) n + 1)/24) "
                     "mod ell^((4r-3)m), m in {1,2}",
                     _thm_2nd_part2, _2ND_DEFAULTS, side_text="ell || n", tags=("e2r", "hecke", "relation")))

# ---- e_4 / e_6 towers --------------------------------------------------------------

_power_family("e4-5", "e4", 5, lambda k: k, "e4(5^k n + d_{5,k}) = 0 mod 5^k", tags=("e2r",))
_power_family("e6-5", "e6", 5, lambda k: 2 * k, "e6(5^k n + d_{5,k}) = 0 mod 5^(2k)", tags=("e2r",))
_power_family("e4-7", "e4", 7, lambda k: k, "e4(7^k n + d_{7,k}) = 0 mod 7^k", tags=("e2r",))
_single("e6-mod7", "e6", 7, 7, 5, 1, "e6(7n+5) = 0 mod 7", tags=("e2r",))
_residue_family("e6-mod49", "e6", 7, 49, (19, 33, 40, 47), 2, "e6(49n+r) = 0 mod 49, r in {19,33,40,47}",
                tags=("e2r",))
_power_family("e6-7", "e6", 7, lambda k: 2 * k, "e6(7^(2k) n + d_{7,2k}) = 0 mod 7^(2k)", scale=2,
              tags=("e2r",))
_power_family("e4-13", "e4", 13, lambda k: 2 * k, "e4(13^(2k) n + d_{13,2k}) = 0 mod 13^(2k)", scale=2,
              tags=("e2r",))
_power_family("e6-13", "e6", 13, lambda k: 2 * k, "e6(13^(2k) n + d_{13,2k}) = 0 mod 13^(2k)", scale=2,
              tags=("e2r",))
_power_family("e4-11", "e4", 11, lambda k: k, "e4(11^k n + d_{11,k}) = 0 mod 11^k", tags=("e2r",))
_power_family("e6-11", "e6", 11, lambda k: 2 * k, "e6(11^(2k) n + d_{11,2k}) = 0 mod 11^(2k)", scale=2,
              tags=("e2r",))

# ---- moments ---------------------------------------------------------------------

_h = lambda k: (k + 1) // 2  # noqa: E731
_MOMENT_FAMILIES = [
    ("M4-5power", "M4", 5, lambda k: k - 1, "M4(5^k n + d) = 0 mod 5^(k-1)", ()),
    ("M4-7power", "M4", 7, lambda k: k // 2 + 1, "M4(7^k n + d) = 0 mod 7^(floor(k/2)+1)", ()),
    ("M4-7power-intro", "M4", 7, _h, "M4(7^k n + d) = 0 mod 7^floor((k+1)/2)", ("variant",)),
    ("M4-11power", "M4", 11, lambda k: k, "M4(11^k n + d) = 0 mod 11^k", ()),
    ("M6-5power", "M6", 5, lambda k: k, "M6(5^k n + d) = 0 mod 5^k", ()),
    ("M6-7power", "M6", 7, lambda k: k // 2, "M6(7^k n + d) = 0 mod 7^floor(k/2)", ()),
    ("M6-11power", "M6", 11, lambda k: k, "M6(11^k n + d) = 0 mod 11^k", ()),
    ("mu4-5power", "mu4", 5, lambda k: k - 1, "mu4(5^k n + d) = 0 mod 5^(k-1)", ()),
    ("mu4-7power", "mu4", 7, lambda k: k // 2 + 1, "mu4(7^k n + d) = 0 mod 7^(floor(k/2)+1)", ()),
    ("mu4-11power", "mu4", 11, lambda k: k, "mu4(11^k n + d) = 0 mod 11^k", ()),
    ("mu6-5power", "mu6", 5, lambda k: k - 1, "mu6(5^k n + d) = 0 mod 5^(k-1)", ()),
    ("mu6-7power", "mu6", 7, lambda k: k // 2, "mu6(7^k n + d) = 0 mod 7^floor(k/2)", ()),
    ("mu6-11power", "mu6", 11, lambda k: k, "mu6(11^k n + d) = 0 mod 11^k", ()),
    ("N4-5power", "N4", 5, lambda k: _h(k) - gamma(k, 1), "N4(5^k n + d) = 0 mod 5^(floor((k+1)/2)-g(k,1))", ()),
    ("N4-5power-intro", "N4", 5, _h, "N4(5^k n + d) = 0 mod 5^floor((k+1)/2)", ("variant",)),
    ("N4-7power", "N4", 7, _h, "N4(7^k n + d) = 0 mod 7^floor((k+1)/2)", ()),
    ("N6-5power", "N6", 5, _h, "N6(5^k n + d) = 0 mod 5^floor((k+1)/2)", ()),
    ("N6-7power", "N6", 7, lambda k: _h(k) - gamma(k, 1), "N6(7^k n + d) = 0 mod 7^(floor((k+1)/2)-g(k,1))", ()),
    ("eta4-5power", "eta4", 5, lambda k: _h(k) - gamma(k, 1),
     "eta4(5^k n + d) = 0 mod 5^(floor((k+1)/2)-g(k,1))", ()),
    # displayed without the g(k,1) correction; kept as displayed (see notes)
    ("eta4-7power", "eta4", 7, _h, "eta4(7^k n + d) = 0 mod 7^floor((k+1)/2)", ("open-question",)),
    ("eta6-5power", "eta6", 5, lambda k: _h(k) - gamma(k, 1),
     "eta6(5^k n + d) = 0 mod 5^(floor((k+1)/2)-g(k,1))", ()),
    ("eta6-7power", "eta6", 7, lambda k: _h(k) - gamma(k, 1),
     "eta6(7^k n + d) = 0 mod 7^(floor((k+1)/2)-g(k,1))", ()),
    ("spt2-5power", "spt2", 5, _h, "spt2(5^k n + d) = 0 mod 5^floor((k+1)/2)", ()),
    ("spt2-7power", "spt2", 7, _h, "spt2(7^k n + d) = 0 mod 7^floor((k+1)/2)", ()),
    ("spt3-5power", "spt3", 5, lambda k: (k - 1) // 2, "spt3(5^k n + d) = 0 mod 5^floor((k-1)/2)", ()),
    ("spt3-7power", "spt3", 7, _h, "spt3(7^k n + d) = 0 mod 7^floor((k+1)/2)", ()),
]
for _cid, _seq, _ell, _exp, _stmt, _tags in _MOMENT_FAMILIES:
    _power_family(_cid, _seq, _ell, _exp, _stmt.replace("+ d)", f"+ d_{{{_ell},k}})"), tags=("moment",) + _tags)


def claim_catalog() -> list[CongruenceClaim]:
    return list(_CATALOG)


def get_claim(cid: str) -> CongruenceClaim:
    for c in _CATALOG:
        if c.id == cid:
            return c
    raise InvalidParameter(f"unknown claim {cid!r}")


def default_window(step: int) -> int | None:
    """n_max for a progression step; None means infeasible by default."""
    if step <= 125:
        return 200
    if step <= 2500:
        return 60
    if step <= 20000:
        return 20
    return None
