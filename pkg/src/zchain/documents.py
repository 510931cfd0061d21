"""JSON interchange for complexes and chain maps.

Matrices travel as row-major arrays of decimal strings so that arbitrary
precision survives any consumer; integers are accepted on input.  Degree
keys are decimal strings.  Parse failures raise DocumentError with the enough
structure (degree, code) for a machine-readable report.
"""

from __future__ import annotations

from .errors import (
    DocumentError,
    IllDefined,
    NotAChainMap,
    NotAComplex,
    RankCapExceeded,
)
from .abelian import mk_group
from .complexes import ChainComplex, ChainMap, mk_chain_map, mk_complex
from .intlinalg import IntMatrix

SCHEMA_VERSION = "1"


def matrix_to_json(m):
    return [[str(x) for x in row] for row in m.data]


def json_to_matrix(data, rows, cols, where):
    if not isinstance(data, list):
        raise DocumentError(f"{where}: matrix must be a list of rows", code="bad_matrix")
    if len(data) != rows:
        raise DocumentError(
            f"{where}: expected {rows} rows, found {len(data)}", code="bad_matrix")
    out = []
    for r in data:
        if not isinstance(r, list) or len(r) != cols:
            raise DocumentError(
                f"{where}: expected rows of length {cols}", code="bad_matrix")
        try:
            out.append([int(x) for x in r])
        except (TypeError, ValueError):
            raise DocumentError(
                f"{where}: entries must be integers or decimal strings",
                code="bad_matrix") from None
    return IntMatrix(rows, cols, out)


def _free_matrix(data, where):
    """Parse a matrix whose dimensions are dictated by the data itself."""
    if not isinstance(data, list):
        raise DocumentError(f"{where}: matrix must be a list of rows", code="bad_matrix")
    rows = len(data)
    cols = len(data[0]) if rows else 0
    return json_to_matrix(data, rows, cols, where)


def complex_to_doc(c: ChainComplex):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "support": list(c.support) if c.support else None,
        "groups": {},
        "differentials": {},
    }
    for n in c.degrees():
        g = c.group(n)
        doc["groups"][str(n)] = {
            "generators": g.ngens,
            "relations": matrix_to_json(g.relations),
        }
    if c.support:
        lo, hi = c.support
        for n in range(lo + 1, hi + 1):
            doc["differentials"][str(n)] = matrix_to_json(c.diff(n).matrix)
    return doc


def _parse_degree(key, where):
    try:
        return int(key)
    except ValueError:
        raise DocumentError(f"{where}: degree keys must be integers, got {key!r}",
                            code="bad_degree") from None


def doc_to_complex(doc, max_rank=None):
    if not isinstance(doc, dict):
        raise DocumentError("complex document must be an object", code="bad_document")
    support = doc.get("support")
    groups_doc = doc.get("groups", {})
    diffs_doc = doc.get("differentials", {})
    if support is None:
        if groups_doc:
            raise DocumentError("groups given without a support window",
                                code="support_mismatch")
        return mk_complex(None, {}, {})
    if (not isinstance(support, list) or len(support) != 2
            or not all(isinstance(x, int) for x in support)):
        raise DocumentError("support must be [lo, hi]", code="bad_support")
    lo, hi = support
    if lo > hi:
        raise DocumentError("support window is empty but groups were given"
                            if groups_doc else "support window is empty",
                            code="bad_support")
    groups = {}
    for key, gd in groups_doc.items():
        n = _parse_degree(key, "groups")
        if not (lo <= n <= hi):
            raise DocumentError(f"group at degree {n} lies outside the support",
                                code="support_mismatch", degree=n)
        ngens = gd.get("generators")
        if not isinstance(ngens, int) or ngens < 0:
            raise DocumentError(f"degree {n}: generators must be a nonnegative integer",
                                code="bad_group", degree=n)
        if max_rank is not None and ngens > max_rank:
            raise RankCapExceeded(f"degree {n}: {ngens} generators exceed the cap {max_rank}")
        rel_data = gd.get("relations", [])
        rel_rows = len(rel_data)
        if rel_rows not in (0, ngens):
            raise DocumentError(f"degree {n}: relations need {ngens} rows",
                                code="bad_group", degree=n)
        ncols = len(rel_data[0]) if rel_rows else 0
        rel = json_to_matrix(rel_data, ngens if rel_rows else 0, ncols, f"degree {n} relations")
        if rel.rows != ngens:
            rel = IntMatrix.zeros(ngens, 0)
        groups[n] = mk_group(ngens, rel)
    diffs = {}
    for key, md in diffs_doc.items():
        n = _parse_degree(key, "differentials")
        if not (lo + 1 <= n <= hi):
            raise DocumentError(f"differential at degree {n} lies outside the support",
                                code="support_mismatch", degree=n)
        src = groups.get(n, mk_group(0, IntMatrix.zeros(0, 0)))
        dst = groups.get(n - 1, mk_group(0, IntMatrix.zeros(0, 0)))
        diffs[n] = json_to_matrix(md, dst.ngens, src.ngens, f"differential {n}")
    try:
        return mk_complex((lo, hi), groups, diffs)
    except NotAComplex as e:
        raise DocumentError(f"not a complex: {e}", code="not_a_complex") from e
    except IllDefined as e:
        raise DocumentError(f"ill-defined differential: {e}", code="ill_defined") from e


def map_to_doc(f: ChainMap):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "source": complex_to_doc(f.src),
        "target": complex_to_doc(f.dst),
        "components": {},
    }
    for n in sorted(set(f.src.degrees()) | set(f.dst.degrees())):
        doc["components"][str(n)] = matrix_to_json(f.component(n).matrix)
    return doc


def doc_to_map(doc, max_rank=None, resolve=None):
    if not isinstance(doc, dict):
        raise DocumentError("map document must be an object", code="bad_document")

    def side(key):
        sub = doc.get(key)
        if isinstance(sub, str):
            if resolve is None:
                raise DocumentError(f"{key}: file references are not available here",
                                    code="bad_reference")
            sub = resolve(sub)
        return doc_to_complex(sub, max_rank=max_rank)

    src = side("source")
    dst = side("target")
    comps = {}
    for key, md in doc.get("components", {}).items():
        n = _parse_degree(key, "components")
        comps[n] = json_to_matrix(md, dst.group(n).ngens, src.group(n).ngens,
                                  f"component {n}")
    try:
        return mk_chain_map(src, dst, comps)
    except NotAChainMap as e:
        raise DocumentError(f"not a chain map: {e}", code="not_a_chain_map") from e
    except IllDefined as e:
        raise DocumentError(f"ill-defined component: {e}", code="ill_defined") from e
