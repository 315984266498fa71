"""Explicit power-free sets of size sum_{k<d} pi(N/k) for N >= 2^d p_d.

The set is made of prime bands and small gadgets:

* for 1 <= k <= d-2, ``A_k`` holds i*p for primes p in (N/(k+1), N/k] and
  1 <= i <= k (every such p has exactly k multiples in [N]);
* ``A_{d-1}`` holds i*p for primes p_d < p <= N/(d-1) and i <= d-1;
* for 2 <= s <= d, the gadget ``B_{p_s}`` holds 2^j * p_s for j in a fixed
  set of d exponents from [0, d] whose sum is 1 mod d.

A product of distinct elements from a band carries some band prime with
exponent between 1 and d-1. Within the gadgets, a d-th power would need all
d multiples of each prime used, leaving the exponent of 2 congruent to the
number of gadget primes involved, which lies strictly between 0 and d.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .bounds import main_term, threshold
from .errors import InvalidArgument, OutOfRange, ThresholdNotMet
from .expvec import DEFAULT_CLOSURE_CAP, VectorMultiset, eliminate, find_zero_sum
from .primes import PrimeTable, nth_prime


def choose_j_set(d: int) -> list[int]:
    """[0, d] minus the smallest m with m = d(d+1)/2 - 1 (mod d)."""
    if d < 2:
        raise InvalidArgument(f"d must be >= 2, got {d}")
    target = (d * (d + 1) // 2 - 1) % d
    m = next(x for x in range(d + 1) if x % d == target)
    return [j for j in range(d + 1) if j != m]


@dataclass
class ConstructionCertificate:
    d: int
    N: int
    bands: dict[int, list[int]]
    last_band: list[int]
    gadgets: dict[int, list[int]]
    j_set: list[int]
    full_set: list[int]
    claimed_size: int
    verified: bool | None = None
    witness: list[int] | None = None
    violations: list[str] = field(default_factory=list)
    transcript: list[str] = field(default_factory=list)

    def parts(self):
        for k, vals in sorted(self.bands.items()):
            yield f"A_{k}", vals
        yield f"A_{self.d - 1}", self.last_band
        for p, vals in sorted(self.gadgets.items()):
            yield f"B_{p}", vals

    def to_dict(self):
        return {
            "d": self.d,
            "N": self.N,
            "j_set": sorted(self.j_set),
            "bands": {str(k): sorted(v) for k, v in sorted(self.bands.items())},
            "last_band": sorted(self.last_band),
            "gadgets": {str(p): sorted(v) for p, v in sorted(self.gadgets.items())},
            "full_set": sorted(self.full_set),
            "claimed_size": self.claimed_size,
            "verified": self.verified,
            "witness": None if self.witness is None else sorted(self.witness),
            "violations": list(self.violations),
            "transcript": list(self.transcript),
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, doc):
        try:
            return cls(
                d=int(doc["d"]),
                N=int(doc["N"]),
                bands={int(k): [int(x) for x in v] for k, v in doc["bands"].items()},
                last_band=[int(x) for x in doc["last_band"]],
                gadgets={int(p): [int(x) for x in v] for p, v in doc["gadgets"].items()},
                j_set=[int(j) for j in doc["j_set"]],
                full_set=[int(x) for x in doc["full_set"]],
                claimed_size=int(doc["claimed_size"]),
                verified=doc.get("verified"),
                witness=doc.get("witness"),
                violations=list(doc.get("violations", [])),
                transcript=list(doc.get("transcript", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed certificate document: {exc}") from exc

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def build(d: int, N: int, table: PrimeTable) -> ConstructionCertificate:
    if d < 2:
        raise InvalidArgument(f"d must be >= 2, got {d}")
    need = threshold(d)
    if N < need:
        raise ThresholdNotMet(f"construction needs N >= 2^{d} * p_{d}; minimum N is {need}", minimum=need)
    if table.limit < N:
        raise OutOfRange(f"sieve limit {table.limit} is below N = {N}")
    pd = nth_prime(table, d)

    bands = {}
    for k in range(1, d - 1):
        # (N/(k+1), N/k] with integer comparisons
        ps = [int(p) for p in table.primes if p * (k + 1) > N and p * k <= N]
        bands[k] = sorted(i * p for p in ps for i in range(1, k + 1))
    last = [int(p) for p in table.primes if p > pd and p * (d - 1) <= N]
    last_band = sorted(i * p for p in last for i in range(1, d))

    js = choose_j_set(d)
    gadgets = {}
    for s in range(2, d + 1):
        ps = nth_prime(table, s)
        gadgets[ps] = sorted(2**j * ps for j in js)

    full = sorted(x for part in [*bands.values(), last_band, *gadgets.values()] for x in part)
    return ConstructionCertificate(
        d=d,
        N=N,
        bands=bands,
        last_band=last_band,
        gadgets=gadgets,
        j_set=js,
        full_set=full,
        claimed_size=main_term(d, N, table),
    )


def _structural_violations(cert, table):
    d, N = cert.d, cert.N
    out = []
    parts = list(cert.parts())
    union = [x for _, vals in parts for x in vals]
    if len(set(union)) != len(union):
        out.append("parts are not pairwise disjoint")
    if sorted(set(union)) != sorted(cert.full_set) or len(set(cert.full_set)) != len(cert.full_set):
        out.append("full_set is not the union of the parts")
    if any(x < 1 or x > N for x in cert.full_set):
        out.append(f"element outside [1, {N}]")
    js = cert.j_set
    if len(js) != d or len(set(js)) != d or any(not 0 <= j <= d for j in js) or sum(js) % d != 1 % d:
        out.append(f"j_set {js} is not d distinct exponents in [0, d] summing to 1 mod d")
    need = threshold(d)
    if N < need:
        out.append(f"N = {N} is below the threshold {need}")
    if table.limit < N:
        out.append(f"sieve limit {table.limit} below N")
        return out
    expected_size = main_term(d, N, table)
    if cert.claimed_size != expected_size:
        out.append(f"claimed_size {cert.claimed_size} != sum pi(N/k) = {expected_size}")
    if len(cert.full_set) != cert.claimed_size:
        out.append(f"|full_set| = {len(cert.full_set)} != claimed_size {cert.claimed_size}")

    gadget_primes = [nth_prime(table, s) for s in range(2, d + 1)]
    if sorted(cert.gadgets) != gadget_primes:
        out.append(f"gadget primes {sorted(cert.gadgets)} != p_2..p_d = {gadget_primes}")
    for p, vals in cert.gadgets.items():
        if len(vals) != d:
            out.append(f"|B_{p}| = {len(vals)} != {d}")
        if sorted(vals) != sorted(2**j * p for j in js):
            out.append(f"B_{p} is not {{2^j * {p} : j in j_set}}")
        if any(x > need for x in vals):
            out.append(f"B_{p} has an element above 2^d p_d = {need}")

    if len(table.primes) < d:
        out.append(f"sieve up to {table.limit} does not contain p_{d}")
        return out
    pd = nth_prime(table, d)
    banded = [(k, vals) for k, vals in cert.bands.items()] + [(d - 1, cert.last_band)]
    for k, vals in banded:
        for x in vals:
            if not 1 <= x <= table.limit:
                continue
            p = table.factorize(x).largest_prime()
            if k < d - 1:
                ok = p * (k + 1) > N and p * k <= N
            else:
                ok = p > pd and p * (d - 1) <= N
            if not ok or not 1 <= x // p <= k:
                out.append(f"{x} does not belong to band A_{k}")
    return out


def verify_certificate(cert: ConstructionCertificate, table: PrimeTable, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    """Check every invariant and the absence of a zero sum; records the outcome on ``cert``."""
    cert.violations = _structural_violations(cert, table)
    cert.transcript = list(cert.violations)
    ms = VectorMultiset.from_integers(sorted(set(cert.full_set)), cert.d, table)
    residual, removed = eliminate(ms)
    cert.transcript.append(
        f"elimination removed {len(removed)} of {len(ms)} elements; "
        f"residual {residual.labels()} over prime indices {residual.coordinates()}"
    )
    report = find_zero_sum(residual, cap=cap)
    if report.has_zero_sum:
        cert.witness = list(report.witness)
        cert.transcript.append(f"zero sum found: {cert.witness}")
    else:
        cert.witness = None
        cert.transcript.append("no non-empty sub-multiset of the residual sums to zero")
    cert.verified = not cert.violations and not report.has_zero_sum
    return cert.verified
