"""JSON documents for every public value type.

``dumps`` is canonical (sorted keys, fixed separators), so equal values give
byte-identical output.  Parsers accept a few shorthands for hand-written
input: a matrix entry or a token scalar may be a plain number or a string
such as ``"3/4"`` instead of a full ring-element document.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .factorization import FactorizationResult
from .geometry import PolarizedTriple, RationalCone
from .rings import Affine, BaseRing, CDivisibleTruncation, FreeMixed, MonoidSpec, Ring, RingElement
from .symplectic import SE, SW, DeltaConj, GenWord, IndexSet, SEDiag, SympMatrix


class FormatError(ValueError):
    """A JSON document does not describe the expected value."""


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(", ", ": ")) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# -- monoids and rings ------------------------------------------------------


def monoid_to_json(M: MonoidSpec) -> dict:
    if isinstance(M, FreeMixed):
        doc = {"kind": "free_mixed", "polynomial_vars": M.m, "laurent_vars": M.n}
        if M.laurent != FreeMixed.standard(M.m, M.n).laurent:
            doc["laurent_mask"] = list(M.laurent)
        return doc
    if isinstance(M, Affine):
        doc = {"kind": "affine", "rank": M.rank, "generators": [list(g) for g in M.gens]}
        if M.approximation_bound is not None:
            doc["approximation_bound"] = M.approximation_bound
        return doc
    if isinstance(M, CDivisibleTruncation):
        return {"kind": "c_divisible", "base": monoid_to_json(M.base), "c": M.c, "level": M.level}
    raise FormatError(f"cannot serialize monoid {M!r}")


def monoid_from_json(doc) -> MonoidSpec:
    try:
        kind = doc["kind"]
        if kind == "free_mixed":
            if "laurent_mask" in doc:
                return FreeMixed(tuple(bool(x) for x in doc["laurent_mask"]))
            return FreeMixed.standard(int(doc.get("polynomial_vars", 0)), int(doc.get("laurent_vars", 0)))
        if kind == "affine":
            return Affine(
                int(doc["rank"]),
                tuple(tuple(int(x) for x in g) for g in doc["generators"]),
                approximation_bound=doc.get("approximation_bound"),
            )
        if kind == "c_divisible":
            return CDivisibleTruncation(monoid_from_json(doc["base"]), int(doc["c"]), int(doc["level"]))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed monoid document: {exc}") from exc
    raise FormatError(f"unknown monoid kind {doc.get('kind')!r}")


def ring_to_json(R: Ring) -> dict:
    return {"base": R.base.name, "monoid": monoid_to_json(R.monoid)}


def ring_from_json(doc) -> Ring:
    if isinstance(doc, str):
        return Ring(BaseRing.parse(doc), FreeMixed(()))
    try:
        return Ring(BaseRing.parse(doc["base"]), monoid_from_json(doc.get("monoid", {"kind": "free_mixed"})))
    except KeyError as exc:
        raise FormatError(f"malformed ring document: missing {exc}") from exc


def _terms_to_json(a: RingElement) -> list:
    fmt = a.ring.base.format
    return [[[_frac(x) for x in exp], fmt(c)] for exp, c in a.terms]


def element_to_json(a: RingElement) -> dict:
    doc = ring_to_json(a.ring)
    doc["terms"] = _terms_to_json(a)
    return doc


def element_from_json(doc, ring: Ring | None = None) -> RingElement:
    """Full document, bare term list, or scalar shorthand (needs ``ring``)."""
    if isinstance(doc, dict):
        r = ring_from_json(doc) if "base" in doc else ring
        if r is None:
            raise FormatError("ring element without a ring")
        if ring is not None and r != ring:
            raise FormatError("ring element lives in a different ring than its container")
        return _terms_from_json(doc.get("terms", []), r)
    if ring is None:
        raise FormatError("shorthand ring element needs a surrounding ring")
    if isinstance(doc, list):
        return _terms_from_json(doc, ring)
    if isinstance(doc, (int, str)) and not isinstance(doc, bool):
        try:
            return ring.constant(Fraction(doc) if isinstance(doc, str) else doc)
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
    raise FormatError(f"cannot read ring element from {doc!r}")


def _terms_from_json(terms, ring: Ring) -> RingElement:
    try:
        return ring.element([(tuple(Fraction(x) for x in exp), Fraction(c)) for exp, c in terms])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed term list: {exc}") from exc


# -- matrices and words -----------------------------------------------------


def matrix_to_json(M: SympMatrix) -> dict:
    return {
        "n": M.n,
        "ring": ring_to_json(M.ring),
        "entries": [[element_to_json(x) for x in row] for row in M.rows],
    }


def matrix_from_json(doc) -> SympMatrix:
    try:
        ring = ring_from_json(doc["ring"])
        rows = [[element_from_json(x, ring) for x in row] for row in doc["entries"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed matrix document: {exc}") from exc
    M = SympMatrix(ring, rows)
    if "n" in doc and int(doc["n"]) != M.n:
        raise FormatError(f"declared n={doc['n']} but entries give n={M.n}")
    return M


def token_to_json(tok) -> dict:
    if isinstance(tok, SE):
        return {"kind": "SE", "i": tok.i, "j": tok.j, "lambda": element_to_json(tok.lam), "inverse": tok.inverse}
    if isinstance(tok, SEDiag):
        return {"kind": "SEDiag", "i": tok.i, "lambda": element_to_json(tok.lam), "inverse": tok.inverse}
    if isinstance(tok, SW):
        return {"kind": "SW", "i": tok.i, "j": tok.j, "u": element_to_json(tok.u), "inverse": tok.inverse}
    if isinstance(tok, DeltaConj):
        return {
            "kind": "DeltaConj",
            "I": tok.I.sorted(),
            "t": element_to_json(tok.t),
            "direction": tok.direction,
            "inverse": tok.inverse,
        }
    raise FormatError(f"unknown token {tok!r}")


def token_from_json(doc, n: int, ring: Ring):
    try:
        kind = doc["kind"]
        inv = bool(doc.get("inverse", False))
        if kind == "SE":
            return SE(int(doc["i"]), int(doc["j"]), element_from_json(doc["lambda"], ring), inv)
        if kind == "SEDiag":
            return SEDiag(int(doc["i"]), element_from_json(doc["lambda"], ring), inv)
        if kind == "SW":
            return SW(int(doc["i"]), int(doc["j"]), element_from_json(doc["u"], ring), inv)
        if kind == "DeltaConj":
            return DeltaConj(IndexSet.of(n, doc["I"]), element_from_json(doc["t"], ring), int(doc.get("direction", 1)), inv)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed token: {exc}") from exc
    raise FormatError(f"unknown token kind {doc.get('kind')!r}")


def word_to_json(w: GenWord) -> dict:
    return {"n": w.n, "ring": ring_to_json(w.ring), "tokens": [token_to_json(t) for t in w.tokens]}


def word_from_json(doc) -> GenWord:
    try:
        n = int(doc["n"])
        ring = ring_from_json(doc["ring"])
        toks = tuple(token_from_json(t, n, ring) for t in doc["tokens"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed word document: {exc}") from exc
    return GenWord(n, ring, toks)


def factorization_to_json(res: FactorizationResult) -> dict:
    return {"word": word_to_json(res.word), "residual": matrix_to_json(res.residual), "stats": dict(res.stats)}


def factorization_from_json(doc) -> FactorizationResult:
    try:
        return FactorizationResult(word_from_json(doc["word"]), matrix_from_json(doc["residual"]), dict(doc["stats"]))
    except KeyError as exc:
        raise FormatError(f"malformed factorization document: missing {exc}") from exc


# -- geometry ---------------------------------------------------------------


def cone_to_json(C: RationalCone) -> dict:
    return {"rank": C.rank, "rays": [list(r) for r in C.rays], "facets": [list(h) for h in C.facets]}


def cone_from_json(doc) -> RationalCone:
    try:
        C = RationalCone(int(doc["rank"]), tuple(tuple(int(x) for x in r) for r in doc["rays"]))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed cone document: {exc}") from exc
    if "facets" in doc and sorted(tuple(h) for h in doc["facets"]) != sorted(C.facets):
        raise FormatError("declared facets do not match the rays")
    return C


def polarized_to_json(T: PolarizedTriple) -> dict:
    return {
        "monoid": monoid_to_json(T.monoid),
        "apex_ray": list(T.apex_ray),
        "base_polytope": cone_to_json(T.base_polytope),
        "t_exponent": list(T.t_exponent),
        "generation_bound": T.generation_bound,
    }


def polarized_from_json(doc) -> PolarizedTriple:
    try:
        M = monoid_from_json(doc["monoid"])
        if not isinstance(M, Affine):
            raise FormatError("polarized triples need an affine monoid")
        return PolarizedTriple(
            M,
            tuple(int(x) for x in doc["apex_ray"]),
            cone_from_json(doc["base_polytope"]),
            tuple(int(x) for x in doc["t_exponent"]),
            int(doc.get("generation_bound", 8)),
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed polarized triple: {exc}") from exc
