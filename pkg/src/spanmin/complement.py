"""Complement models and homological spanning / competitor checks.

The complement of a face set F inside the box is modeled by the full
subcomplex of the once-barycentrically-subdivided ambient complex spanned by
the cells whose closure misses |F|.  Constraint cycles are realized as
combinatorial chains in that model and tested for null-homology.  Large
models are shrunk by homotopy-preserving elementary collapses (locking the
cycle's support) before any normal-form computation.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .complexes import Chain, Complex, FaceSet
from .errors import InvalidInputError, PreconditionError, RealizationError
from . import homology as _hom


# -- barycentric subdivision bookkeeping -----------------------------------

class _SdStructure:
    """Chains-in-the-face-poset view of the barycentric subdivision of K.

    Subdivision vertices are the simplices of K, numbered dimension by
    dimension (offsets[k] + index).  A subdivision m-simplex is a strictly
    increasing chain of m+1 faces, so its id tuple is already canonical.
    """

    def __init__(self, K: Complex, max_dim: int):
        self.K = K
        self.max_dim = max_dim
        self.offsets = [0]
        for k in range(K.dim + 1):
            self.offsets.append(self.offsets[-1] + K.n_simplices(k))
        self.total = self.offsets[-1]

        # barycenter coordinates, exact rationals
        coords: List[Tuple[Fraction, ...]] = []
        for k in range(K.dim + 1):
            for s in K.simplices(k):
                pts = [K.coords[v] for v in s]
                m = len(pts)
                coords.append(tuple(sum(col) / m for col in zip(*pts)))
        self.coords = coords

        self.chains: Dict[int, List[Tuple[int, ...]]] = {0: []}
        self.chains[0] = [(i,) for i in range(self.total)]
        for m in range(1, max_dim + 1):
            self.chains[m] = []
        self._generate()
        self.edge_arrays = None
        if max_dim >= 1 and self.chains[1]:
            E = np.array(self.chains[1], dtype=np.int64)
            self.edge_arrays = (E[:, 0], E[:, 1])

    def sd_id(self, k: int, idx: int) -> int:
        return self.offsets[k] + idx

    def _generate(self) -> None:
        K = self.K
        if self.max_dim < 1:
            return
        index = K._index
        offsets = self.offsets
        edges = self.chains.get(1)
        tris = self.chains.get(2)
        want3 = self.max_dim >= 3

        def sub_ids(t: Tuple[int, ...]) -> List[int]:
            out = []
            for r in range(1, len(t)):
                off = offsets[r - 1]
                idx = index[r - 1]
                for sub in itertools.combinations(t, r):
                    out.append(off + idx[sub])
            return out

        # proper-subset ids per simplex, top dimension by top dimension
        subs_cache: Dict[int, List[int]] = {}
        high: Dict[int, List[Tuple[int, ...]]] = {m: [] for m in range(3, self.max_dim + 1)}
        for k in range(1, K.dim + 1):
            off = offsets[k]
            for i, t in enumerate(K.simplices(k)):
                b = off + i
                below = sub_ids(t)
                subs_cache[b] = below
                for a in below:
                    edges.append((a, b))
                if tris is not None:
                    for m in below:
                        for a in subs_cache.get(m, ()):
                            tris.append((a, m, b))
                if want3:
                    self._extend_high(b, below, subs_cache, high)
        for m, lst in high.items():
            self.chains[m] = lst

    def _extend_high(self, top: int, below: List[int],
                     subs_cache: Dict[int, List[int]],
                     high: Dict[int, List[Tuple[int, ...]]]) -> None:
        # depth-first chains of length >= 4 ending at `top`
        def descend(prefix: Tuple[int, ...], node: int) -> None:
            chain = (node,) + prefix
            if len(chain) - 1 >= 3 and len(chain) - 1 <= self.max_dim:
                high[len(chain) - 1].append(chain)
            for a in subs_cache.get(node, ()):
                descend(chain, a)

        for m in below:
            for a in subs_cache.get(m, ()):
                descend((m, top), a)


def _sd_structure(K: Complex, max_dim: int) -> _SdStructure:
    cached = K.cache.get("sd")
    if cached is None or cached.max_dim < max_dim:
        cached = _SdStructure(K, max_dim)
        K.cache["sd"] = cached
    return cached


# -- the complement model ---------------------------------------------------

class ComplementModel:
    """Homotopy model of box-minus-|F|, with fast bounding tests."""

    def __init__(self, K: Complex, F: FaceSet, max_dim: int):
        if F.complex is not K:
            raise PreconditionError("face set belongs to a different complex")
        self.K = K
        self.F = F
        self.max_dim = max_dim
        self.sd = _sd_structure(K, max_dim)

        bad = bytearray(self.sd.total)
        d = F.dim
        for f in F.faces:
            t = K.simplex(d, f)
            for r in range(1, len(t) + 1):
                off = self.sd.offsets[r - 1]
                idx = K._index[r - 1]
                for sub in itertools.combinations(t, r):
                    bad[off + idx[sub]] = 1
        self.bad = bad

        good = np.frombuffer(bytes(bad), dtype=np.uint8) == 0
        self.good = good
        self._labels: Optional[np.ndarray] = None
        self._deg1_cache: Optional[Dict] = None
        self._complex: Optional[Complex] = None
        self._id_map: Optional[Dict[int, int]] = None

        if self.sd.edge_arrays is not None:
            a, b = self.sd.edge_arrays
            keep = good[a] & good[b]
            self.edges_a = a[keep]
            self.edges_b = b[keep]
        else:
            self.edges_a = np.zeros(0, dtype=np.int64)
            self.edges_b = np.zeros(0, dtype=np.int64)

    # raw ids below are subdivision-vertex ids (simplices of K)

    def is_clear(self, k: int, idx: int) -> bool:
        """True if the barycenter cell of the (k, idx) simplex avoids |F|."""
        return not self.bad[self.sd.sd_id(k, idx)]

    def _component_labels(self) -> np.ndarray:
        if self._labels is None:
            n = self.sd.total
            if n >= 4096:  # sparse graph machinery pays off only at scale
                data = np.ones(len(self.edges_a), dtype=np.int8)
                graph = sparse.coo_matrix(
                    (data, (self.edges_a, self.edges_b)), shape=(n, n))
                _, labels = csgraph.connected_components(graph,
                                                         directed=False)
                self._labels = labels.astype(np.int64)
                return self._labels
            parent = list(range(n))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b in zip(self.edges_a.tolist(), self.edges_b.tolist()):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
            self._labels = np.array([find(i) for i in range(n)],
                                    dtype=np.int64)
        return self._labels

    def same_component(self, u: int, v: int) -> bool:
        labels = self._component_labels()
        return labels[u] == labels[v]

    # -- full Complex view (lazy) -------------------------------------------

    @property
    def complex(self) -> Complex:
        if self._complex is None:
            good = self.good
            keep_v = [i for i in range(self.sd.total) if good[i]]
            id_map = {old: new for new, old in enumerate(keep_v)}
            simplices: Dict[int, List[Tuple[int, ...]]] = {
                0: [(id_map[v],) for v in keep_v]}
            for m in range(1, self.max_dim + 1):
                kept = []
                for ch in self.sd.chains.get(m, ()):
                    ok = True
                    for v in ch:
                        if not good[v]:
                            ok = False
                            break
                    if ok:
                        kept.append(tuple(id_map[v] for v in ch))
                simplices[m] = kept
            coords = [self.sd.coords[v] for v in keep_v]
            self._complex = Complex(simplices, coords, validate=False)
            self._id_map = id_map
        return self._complex

    def model_vertex(self, k: int, idx: int) -> int:
        """Complement-complex vertex id of the (k, idx)-simplex of K."""
        sdid = self.sd.sd_id(k, idx)
        if self.bad[sdid]:
            raise RealizationError(
                f"simplex ({k},{idx}) lies inside the removed set")
        _ = self.complex
        return self._id_map[sdid]

    # -- bounding tests -----------------------------------------------------

    def _bounds_raw(self, dim: int, coeffs: Dict[int, int]) -> bool:
        """True iff the raw-id cycle bounds in the model (no witness)."""
        if not coeffs:
            return True
        if dim == 0:
            labels = self._component_labels()
            totals: Dict[int, int] = {}
            for v, c in coeffs.items():
                key = int(labels[v])
                totals[key] = totals.get(key, 0) + c
            return not any(totals.values())
        if dim == 1:
            return self._bounds_deg1(coeffs)
        # general case: go through the full complex
        chain = self._raw_to_chain(dim, coeffs)
        null, _ = _hom.is_null_homologous(chain)
        return null

    def _raw_to_chain(self, dim: int, coeffs: Dict[int, int]) -> Chain:
        C = self.complex
        out: Dict[int, int] = {}
        if dim == 0:
            for v, c in coeffs.items():
                out[C.index((self._id_map[v],))] = c
        else:
            raise InvalidInputError("raw chains are tracked by simplex tuples")
        return Chain(C, dim, out)

    def _edge_chain_to_raw_pairs(self, coeffs: Dict[Tuple[int, int], int]):
        return coeffs

    def _bounds_deg1(self, coeffs: Dict[Tuple[int, int], int]) -> bool:
        """Bounding test for 1-cycles given as {(a,b) raw edge: coeff}.

        Attaching a 2-cell along z quotients H_1 by the class of z, so z
        bounds exactly when the quotient has the same rank and torsion.  Both
        groups are computed exactly after a coreduction pass, so the test
        stays integer-exact on large models.
        """
        tables = self._deg1_tables()
        edge_idx = tables["edge_idx"]
        extra: Dict[int, int] = {}
        for e, c in coeffs.items():
            if e not in edge_idx:
                raise RealizationError(f"cycle edge {e} not in the complement")
            extra[edge_idx[e]] = c
        plain = self._h1_core(None)
        attached = self._h1_core(extra)
        return plain == attached

    def _deg1_tables(self) -> Dict:
        """Static incidence tables of the kept 2-skeleton (built once)."""
        if getattr(self, "_deg1_cache", None) is not None:
            return self._deg1_cache
        good = self.good
        edges: List[Tuple[int, int]] = list(zip(self.edges_a.tolist(),
                                                self.edges_b.tolist()))
        edge_idx = {e: i for i, e in enumerate(edges)}
        vert_edges: Dict[int, List[int]] = {}
        for i, (a, b) in enumerate(edges):
            vert_edges.setdefault(a, []).append(i)
            vert_edges.setdefault(b, []).append(i)
        tri_bnd: List[Tuple[int, int, int]] = []  # edge ids of (bc, ac, ab)
        edge_tris: Dict[int, List[int]] = {}
        for (a, b, c) in self.sd.chains.get(2, ()):
            if good[a] and good[b] and good[c]:
                t = len(tri_bnd)
                e_bc, e_ac, e_ab = edge_idx[(b, c)], edge_idx[(a, c)], edge_idx[(a, b)]
                tri_bnd.append((e_bc, e_ac, e_ab))
                for e in (e_bc, e_ac, e_ab):
                    edge_tris.setdefault(e, []).append(t)
        self._deg1_cache = {
            "edges": edges, "edge_idx": edge_idx, "vert_edges": vert_edges,
            "tri_bnd": tri_bnd, "edge_tris": edge_tris,
            "verts": [v for v in vert_edges]}
        return self._deg1_cache

    def _h1_core(self, extra: Optional[Dict[int, int]]) -> _hom.HomologyGroup:
        """H_1 of the model (optionally with one extra 2-cell attached).

        Coreduction: repeatedly delete a cell pair (a, b) where a is the only
        remaining boundary cell of b with unit coefficient; this preserves
        homology in degrees >= 1.  One vertex per component is deleted to
        seed the cascade (this only touches degree 0).  The surviving core is
        handed to the exact normal-form routine.
        """
        t = self._deg1_tables()
        edges, tri_bnd = t["edges"], t["tri_bnd"]
        vert_edges, edge_tris = t["vert_edges"], t["edge_tris"]
        ne, nt = len(edges), len(tri_bnd)

        rm_v: Dict[int, bool] = {}
        rm_e = bytearray(ne)
        rm_t = bytearray(nt)
        rm_x = False
        bcnt_e = [2] * ne
        bcnt_t = [3] * nt
        extra = dict(extra) if extra else None
        bcnt_x = len(extra) if extra else 0
        ccnt_v = {v: len(es) for v, es in vert_edges.items()}
        ccnt_e = [len(edge_tris.get(e, ())) for e in range(ne)]
        if extra:
            for e in extra:
                ccnt_e[e] += 1

        queue: deque = deque()

        def drop_vertex(v: int) -> None:
            rm_v[v] = True
            for e in vert_edges.get(v, ()):
                if not rm_e[e]:
                    bcnt_e[e] -= 1
                    if bcnt_e[e] == 1:
                        queue.append(("e", e))

        def drop_edge(e: int) -> None:
            nonlocal bcnt_x
            rm_e[e] = 1
            for ti in edge_tris.get(e, ()):
                if not rm_t[ti]:
                    bcnt_t[ti] -= 1
                    if bcnt_t[ti] == 1:
                        queue.append(("t", ti))
            if extra is not None and not rm_x and e in extra:
                bcnt_x -= 1
                if bcnt_x == 1:
                    queue.append(("x", 0))
            for v in edges[e]:
                if not rm_v.get(v):
                    ccnt_v[v] -= 1
                    if ccnt_v[v] == 1:
                        queue.append(("V", v))

        def drop_tri(ti: int) -> None:
            rm_t[ti] = 1
            for e in tri_bnd[ti]:
                if not rm_e[e]:
                    ccnt_e[e] -= 1
                    if ccnt_e[e] == 1:
                        queue.append(("E", e))

        def drop_extra() -> None:
            nonlocal rm_x
            rm_x = True
            for e in extra:
                if not rm_e[e]:
                    ccnt_e[e] -= 1
                    if ccnt_e[e] == 1:
                        queue.append(("E", e))

        # seed the collapse cascade with already-free faces, then delete one
        # vertex per component of the kept 1-skeleton (degree-0 bookkeeping
        # only) to start the coreduction cascade
        for e in range(ne):
            if ccnt_e[e] == 1:
                queue.append(("E", e))
        for v, c in ccnt_v.items():
            if c == 1:
                queue.append(("V", v))
        labels = self._component_labels()
        seen = set()
        for v in t["verts"]:
            lab = int(labels[v])
            if lab not in seen:
                seen.add(lab)
                drop_vertex(v)

        while queue:
            kind, i = queue.popleft()
            if kind == "e":  # coreduction pair (vertex, edge)
                if rm_e[i] or bcnt_e[i] != 1:
                    continue
                a, b = edges[i]
                v = a if not rm_v.get(a) else b
                drop_edge(i)
                drop_vertex(v)
            elif kind == "t":  # coreduction pair (edge, triangle)
                if rm_t[i] or bcnt_t[i] != 1:
                    continue
                e = next(e for e in tri_bnd[i] if not rm_e[e])
                drop_tri(i)
                drop_edge(e)
            elif kind == "x":  # coreduction pair (edge, attached cell)
                if rm_x or extra is None or bcnt_x != 1:
                    continue
                e, c = next((e, c) for e, c in extra.items() if not rm_e[e])
                if abs(c) != 1:
                    continue  # non-unit coefficient: leave for the core
                drop_extra()
                drop_edge(e)
            elif kind == "V":  # collapse pair (vertex, edge)
                if rm_v.get(i) or ccnt_v.get(i, 0) != 1:
                    continue
                e = next(e for e in vert_edges[i] if not rm_e[e])
                drop_vertex(i)
                drop_edge(e)
            else:  # "E": collapse pair (edge, 2-cell)
                if rm_e[i] or ccnt_e[i] != 1:
                    continue
                ti = next((tt for tt in edge_tris.get(i, ())
                           if not rm_t[tt]), None)
                if ti is not None:
                    drop_edge(i)
                    drop_tri(ti)
                elif extra is not None and not rm_x and abs(extra[i]) == 1:
                    drop_edge(i)
                    drop_extra()

        # exact homology of the surviving core with restricted boundaries
        core_v = {v: i for i, v in enumerate(
            w for w in t["verts"] if not rm_v.get(w))}
        core_e = [i for i in range(ne) if not rm_e[i]]
        e_pos = {e: i for i, e in enumerate(core_e)}
        core_t = [ti for ti in range(nt)
                  if not rm_t[ti] and bcnt_t[ti] > 0]

        cols1: Dict[int, Dict[int, int]] = {}
        for j, e in enumerate(core_e):
            a, b = edges[e]
            col: Dict[int, int] = {}
            if a in core_v:
                col[core_v[a]] = -1
            if b in core_v:
                col[core_v[b]] = col.get(core_v[b], 0) + 1
            if col:
                cols1[j] = col
        cols2: Dict[int, Dict[int, int]] = {}
        for j, ti in enumerate(core_t):
            e_bc, e_ac, e_ab = tri_bnd[ti]
            col = {}
            for e, s in ((e_bc, 1), (e_ac, -1), (e_ab, 1)):
                if e in e_pos:
                    col[e_pos[e]] = col.get(e_pos[e], 0) + s
            col = {i: v for i, v in col.items() if v}
            if col:
                cols2[j] = col
        if extra is not None and not rm_x:
            col = {e_pos[e]: c for e, c in extra.items() if e in e_pos}
            if col:
                cols2[len(core_t)] = col

        rank1 = len(_hom._snf_diagonal_sparse(cols1))
        diag2 = _hom._snf_diagonal_sparse(cols2)
        rank = (len(core_e) - rank1) - len(diag2)
        torsion = tuple(d for d in diag2 if d > 1)
        return _hom.HomologyGroup(k=1, rank=rank, torsion=torsion)

    def homology(self, k: int) -> _hom.HomologyGroup:
        """H_k of the model; degree one goes through the coreduction core."""
        if k == 0:
            labels = self._component_labels()
            comps = {int(labels[i]) for i in range(self.sd.total)
                     if self.good[i]}
            return _hom.HomologyGroup(k=0, rank=len(comps), torsion=())
        if k == 1 and self.max_dim >= 2:
            return self._h1_core(None)
        return _hom.homology_group(self.complex, k)


def complement_subcomplex(K: Complex, F: FaceSet,
                          max_dim: Optional[int] = None) -> ComplementModel:
    """Model of the open complement of |F| inside the box of K.

    `max_dim` truncates the model's skeleton; homology in degree g only needs
    dimension g+1, which keeps four-dimensional models tractable.
    """
    if max_dim is None:
        max_dim = K.dim
    return ComplementModel(K, F, max_dim)


# -- constraints -------------------------------------------------------------

@dataclass(frozen=True)
class ConstraintCycle:
    """A homology constraint: a cycle that must not bound in the complement.

    Points are integer lattice coordinates of the ambient grid complex.
    `point-pair` has degree 0 (separation), `loop` a closed lattice polygon of
    degree 1, `cycle` an explicit list of (simplex lattice points, coeff).
    """

    kind: str
    points: Tuple[Tuple[int, ...], ...] = ()
    degree: Optional[int] = None
    items: Tuple[Tuple[Tuple[Tuple[int, ...], ...], int], ...] = ()

    def __post_init__(self):
        if self.kind not in ("point-pair", "loop", "cycle"):
            raise InvalidInputError(f"unknown constraint kind {self.kind!r}")
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if self.kind == "point-pair":
            if len(pts) != 2:
                raise InvalidInputError("point-pair needs exactly two points")
            object.__setattr__(self, "degree", 0)
        elif self.kind == "loop":
            if len(pts) < 2:
                raise InvalidInputError("loop needs at least two points")
            object.__setattr__(self, "degree", 1)
        else:
            if self.degree is None:
                raise InvalidInputError("general cycle needs an explicit degree")


def _lattice_vertex(K: Complex, p: Sequence[int]) -> int:
    if K.grid is None:
        raise RealizationError("constraints need a grid-built complex")
    try:
        return K.grid.vertex_at(p)
    except InvalidInputError as exc:
        raise RealizationError(str(exc)) from exc


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def _subdivide_simplex(model: ComplementModel, verts: Tuple[int, ...],
                       coeff: int, out: Dict[Tuple[int, ...], int]) -> None:
    """Add the barycentric pieces of an oriented K-simplex to `out`.

    Keys are raw-id chains (strictly increasing, hence canonical); a bad cell
    anywhere in the support raises.
    """
    K = model.K
    k = len(verts) - 1
    index = K._index
    offsets = model.sd.offsets
    for perm in itertools.permutations(range(k + 1)):
        sgn = _perm_sign(perm)
        chain_ids = []
        prefix: Tuple[int, ...] = ()
        for p in perm:
            prefix = tuple(sorted(prefix + (verts[p],)))
            r = len(prefix) - 1
            sdid = offsets[r] + index[r][prefix]
            if model.bad[sdid]:
                raise RealizationError("constraint support touches the removed set")
            chain_ids.append(sdid)
        key = tuple(chain_ids)
        out[key] = out.get(key, 0) + sgn * coeff
    for key in [key for key, c in out.items() if c == 0]:
        del out[key]


def _realize_raw(spec: ConstraintCycle, model: ComplementModel):
    """Raw realization: (degree, coeffs keyed by raw-id simplex tuple)."""
    K = model.K
    if spec.kind == "point-pair":
        ids = []
        for p in spec.points:
            v = _lattice_vertex(K, p)
            sdid = model.sd.sd_id(0, v)
            if model.bad[sdid]:
                raise RealizationError(f"point {p} lies on the removed set")
            ids.append(sdid)
        if ids[0] == ids[1]:
            warnings.warn("degenerate point pair (identical points)")
            return 0, {}
        return 0, {ids[1]: 1, ids[0]: -1}

    if spec.kind == "loop":
        out: Dict[Tuple[int, ...], int] = {}
        pts = list(spec.points)
        if pts[0] == pts[-1]:
            pts = pts[:-1]
        for i in range(len(pts)):
            p, q = pts[i], pts[(i + 1) % len(pts)]
            u, v = _lattice_vertex(K, p), _lattice_vertex(K, q)
            if u == v:
                raise RealizationError(f"repeated loop point {p}")
            pair = (u, v) if u < v else (v, u)
            if not K.contains(pair):
                raise RealizationError(f"loop hop {p}->{q} is not a grid edge")
            sgn = 1 if u < v else -1
            _subdivide_simplex(model, pair, sgn, out)
        if not out:
            warnings.warn("degenerate loop (edges cancel)")
        return 1, {(a, b): c for (a, b), c in out.items()}

    # explicit cycle
    out = {}
    for verts_pts, coeff in spec.items:
        vids = [_lattice_vertex(K, p) for p in verts_pts]
        canon = tuple(sorted(vids))
        if len(canon) != spec.degree + 1 or not K.contains(canon):
            raise RealizationError(f"cycle item {verts_pts} is not a grid simplex")
        sgn = 1
        # orientation sign of the given vertex order
        from .complexes import canonical_vertices
        _, sgn = canonical_vertices(vids)
        _subdivide_simplex(model, canon, sgn * int(coeff), out)
    return spec.degree, out


def realize_constraint(spec: ConstraintCycle, model: ComplementModel) -> Chain:
    """Realize a constraint as a chain on the complement complex."""
    dim, raw = _realize_raw(spec, model)
    C = model.complex
    remap = model._id_map
    coeffs: Dict[int, int] = {}
    for key, c in raw.items():
        if dim == 0:
            verts = (remap[key],)
        else:
            verts = tuple(remap[v] for v in key)
        coeffs[C.index(verts)] = c
    chain = Chain(C, dim, coeffs)
    if not chain.is_zero() and not _hom.is_cycle(chain):
        raise RealizationError("realized constraint is not a cycle")
    return chain


@dataclass(frozen=True)
class ConstraintStatus:
    """Per-constraint verdict of a spanning check."""

    index: int
    passed: bool
    reason: str  # 'nontrivial', 'null-homologous', 'contact', 'degenerate'


def spanning_check(K: Complex, F: FaceSet,
                   constraints: Sequence[ConstraintCycle],
                   max_dim: Optional[int] = None) -> List[ConstraintStatus]:
    """Per-constraint spanning verdicts for F.

    A constraint passes when its cycle stays homologically nontrivial in the
    complement model of F.  Geometric contact with |F| is reported separately
    from a homologically killed cycle.
    """
    if max_dim is None:
        degs = [c.degree for c in constraints] or [0]
        max_dim = max(degs) + 1
    model = ComplementModel(K, F, max_dim)
    out: List[ConstraintStatus] = []
    for i, c in enumerate(constraints):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                dim, raw = _realize_raw(c, model)
        except RealizationError:
            out.append(ConstraintStatus(i, False, "contact"))
            continue
        if not raw:
            out.append(ConstraintStatus(i, False, "degenerate"))
            continue
        if dim == 0:
            null = model._bounds_raw(0, raw)
        elif dim == 1:
            null = model._bounds_deg1(raw)
        else:
            chain = realize_constraint(c, model)
            null, _ = _hom.is_null_homologous(chain)
        out.append(ConstraintStatus(i, not null,
                                    "nontrivial" if not null else "null-homologous"))
    return out


def is_spanning(K: Complex, F: FaceSet,
                constraints: Sequence[ConstraintCycle]) -> bool:
    return all(s.passed for s in spanning_check(K, F, constraints))


# -- sub-box regions and competitor checks ----------------------------------

@dataclass(frozen=True)
class Region:
    """Axis-aligned lattice sub-box (inclusive vertex bounds)."""

    lo: Tuple[int, ...]
    hi: Tuple[int, ...]

    def __post_init__(self):
        lo = tuple(int(c) for c in self.lo)
        hi = tuple(int(c) for c in self.hi)
        if len(lo) != len(hi) or any(a > b for a, b in zip(lo, hi)):
            raise InvalidInputError(f"bad region bounds {lo}..{hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def contains_point(self, p: Sequence[int]) -> bool:
        return all(a <= c <= b for c, a, b in zip(p, self.lo, self.hi))

    def contains_face(self, K: Complex, dim: int, idx: int) -> bool:
        if K.grid is None:
            raise InvalidInputError("regions need a grid-built complex")
        return all(self.contains_point(K.grid.points[v])
                   for v in K.simplex(dim, idx))


@dataclass(frozen=True)
class CompetitorVerdict:
    """Outcome of a discrete topological-competitor check."""

    boundary_match: bool
    survival: Tuple[Tuple[int, bool], ...]
    overall: bool


def competitor_check(E: FaceSet, F: FaceSet, region: Region, d: int,
                     constraints: Sequence[ConstraintCycle]) -> CompetitorVerdict:
    """Check that F competes with E: equal outside the region, and every
    constraint that is nontrivial for E stays nontrivial for F."""
    if E.complex is not F.complex:
        raise PreconditionError("face sets live in different complexes")
    if E.dim != d or F.dim != d:
        raise PreconditionError("face sets have the wrong dimension")
    K = E.complex
    outside_E = {f for f in E.faces if not region.contains_face(K, d, f)}
    outside_F = {f for f in F.faces if not region.contains_face(K, d, f)}
    boundary_match = outside_E == outside_F

    st_E = spanning_check(K, E, constraints)
    st_F = spanning_check(K, F, constraints)
    survival = tuple((i, (not e.passed) or f.passed)
                     for i, (e, f) in enumerate(zip(st_E, st_F)))
    overall = boundary_match and all(ok for _, ok in survival)
    return CompetitorVerdict(boundary_match=boundary_match,
                             survival=survival, overall=overall)


def free_collapse_candidates(F: FaceSet,
                             region: Optional[Region] = None) -> List[Tuple[int, int]]:
    """Elementary collapse moves available on F.

    Returns (face, free subface) pairs: the (d-1)-subface lies in exactly one
    face of F, so removing the face is a deformation retraction.  With a
    region, both cells must sit inside it (compactly supported deformation).
    """
    K = F.complex
    d = F.dim
    incidence: Dict[Tuple[int, ...], List[int]] = {}
    for f in F.faces:
        s = K.simplex(d, f)
        for i in range(len(s)):
            sub = s[:i] + s[i + 1:]
            incidence.setdefault(sub, []).append(f)
    out = []
    for sub, owners in incidence.items():
        if len(owners) != 1:
            continue
        f = owners[0]
        if region is not None:
            if not region.contains_face(K, d, f):
                continue
            if not all(region.contains_point(K.grid.points[v]) for v in sub):
                continue
        out.append((f, K.index(sub)))
    return sorted(out)
