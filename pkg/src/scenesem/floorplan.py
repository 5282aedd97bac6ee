"""Indoor floor-plan extraction from point clouds.

Pipeline: per-point normals from k-neighborhood covariance, greedy
region-growing plane segmentation, vertical-plane wall filtering, two-stage
density clustering of wall segments (orientation mod 180 degrees, then
perpendicular offset), weighted total-least-squares wall lines, and candidate
rectangle scoring by wall coverage to produce room/corridor structures with
adjacency.

Targets Manhattan-ish layouts of rectangular rooms and corridors; +z is up
and units are meters.  Outputs are deterministic for a fixed point order and
configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from . import geometry, sth
from .config import Config, FloorplanConfig
from .errors import NoRoomsFoundError, SceneFormatError, TooFewPointsError
from .geometry import Point2, Polygon2, Segment2


@dataclass
class PointCloud:
    points: np.ndarray                      # (N, 3) float64
    normals: np.ndarray | None = None       # (N, 3) unit vectors
    curvature: np.ndarray | None = None     # (N,) surface variation in [0, 1/3]
    neighbors: np.ndarray | None = None     # (N, k) int indices

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.points.ndim != 2 or self.points.shape[1] != 3:
            raise ValueError("points must be an (N, 3) array")
        if not np.isfinite(self.points).all():
            raise ValueError("points must be finite")
        if self.normals is not None:
            self.normals = np.asarray(self.normals, dtype=np.float64)
            if self.normals.shape != self.points.shape:
                raise ValueError("normals must match points")
            norms = np.linalg.norm(self.normals, axis=1)
            bad = np.abs(norms - 1.0) > 1e-6
            if bad.any():
                safe = np.where(norms > 0, norms, 1.0)
                self.normals = self.normals / safe[:, None]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class PlanarRegion:
    indices: np.ndarray        # member point indices
    normal: tuple[float, float, float]
    centroid: tuple[float, float, float]
    rms: float                 # point-to-plane RMS of members


@dataclass(frozen=True)
class WallSegment:
    centroid: tuple[float, float, float]
    normal: tuple[float, float]     # horizontal unit normal of the plane
    height: float
    width: float
    inliers: int
    footprint: Segment2             # 2D trace on the floor plane
    z_top: float

    @property
    def direction(self) -> tuple[float, float]:
        return (-self.normal[1], self.normal[0])


@dataclass(frozen=True)
class WallLine:
    point: tuple[float, float]
    direction: tuple[float, float]  # unit, slope-free parameterization
    residual: float                 # weighted RMS perpendicular distance
    segments: tuple[int, ...]       # indices into the wall-segment list
    weight: float                   # total supporting inliers

    def offset_of(self, p) -> float:
        nx, ny = -self.direction[1], self.direction[0]
        return (p[0] - self.point[0]) * nx + (p[1] - self.point[1]) * ny

    def param_of(self, p) -> float:
        return (p[0] - self.point[0]) * self.direction[0] + \
            (p[1] - self.point[1]) * self.direction[1]

    def at(self, s: float) -> tuple[float, float]:
        return (self.point[0] + s * self.direction[0],
                self.point[1] + s * self.direction[1])


@dataclass(frozen=True)
class FloorPlanStructure:
    id: str
    type: str                        # "room" | "corridor"
    corners: tuple[Point2, Point2, Point2, Point2]   # counter-clockwise
    coverage: float
    side_coverage: tuple[float, float, float, float]
    side_lines: tuple[int, int, int, int]            # generating wall-line ids
    major_axis: tuple[float, float]
    major_len: float
    minor_len: float

    def polygon(self) -> Polygon2:
        return geometry.validate_polygon(self.corners)

    def center(self) -> tuple[float, float]:
        return (sum(c.x for c in self.corners) / 4.0,
                sum(c.y for c in self.corners) / 4.0)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "type": self.type,
            "corners": [[c.x, c.y] for c in self.corners],
            "coverage": self.coverage,
            "side_coverage": list(self.side_coverage),
            "major_axis": list(self.major_axis),
        }


@dataclass(frozen=True)
class FloorPlan:
    structures: tuple[FloorPlanStructure, ...]
    adjacency: tuple[tuple[str, str], ...]   # symmetric, stored once (a < b)
    frame: str = "map"

    def structure(self, sid: str) -> FloorPlanStructure:
        for s in self.structures:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def adjacent(self, sid: str) -> list[str]:
        out = []
        for a, b in self.adjacency:
            if a == sid:
                out.append(b)
            elif b == sid:
                out.append(a)
        return sorted(out)

    def to_dict(self) -> dict:
        return {
            "frame": self.frame,
            "structures": [dict(s.to_dict(), adjacency=self.adjacent(s.id))
                           for s in self.structures],
            "adjacency": [list(p) for p in self.adjacency],
        }


def plan_from_dict(data: dict) -> FloorPlan:
    structures = []
    for i, s in enumerate(data.get("structures", [])):
        try:
            corners = tuple(Point2(float(x), float(y)) for x, y in s["corners"])
            if len(corners) != 4:
                raise ValueError("need 4 corners")
            poly = geometry.validate_polygon(corners)
            corners = poly.vertices
            _, axis, major, minor = geometry.rect_axis(poly)
            structures.append(FloorPlanStructure(
                id=str(s["id"]), type=str(s.get("type", "room")),
                corners=corners,
                coverage=float(s.get("coverage", 1.0)),
                side_coverage=tuple(s.get("side_coverage", (1.0,) * 4)),
                side_lines=(-1, -1, -1, -1),
                major_axis=axis, major_len=major, minor_len=minor))
        except (KeyError, ValueError, TypeError) as exc:
            raise SceneFormatError(f"structure #{i}: {exc}") from exc
    adjacency = tuple(tuple(sorted((str(a), str(b))))
                      for a, b in data.get("adjacency", []))
    return FloorPlan(tuple(structures), tuple(sorted(set(adjacency))),
                     frame=str(data.get("frame", "map")))


# ---------------------------------------------------------------------------
# cloud io
# ---------------------------------------------------------------------------

def load_xyz(path) -> PointCloud:
    """Whitespace-separated 'x y z [nx ny nz]' per line; '#' comments allowed."""
    pts, nrm = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            cols = body.split()
            if len(cols) not in (3, 6):
                raise SceneFormatError("expected 3 or 6 columns", line=lineno)
            try:
                vals = [float(c) for c in cols]
            except ValueError:
                raise SceneFormatError("non-numeric coordinate", line=lineno) from None
            pts.append(vals[:3])
            if len(cols) == 6:
                nrm.append(vals[3:])
    if not pts:
        raise SceneFormatError("empty point cloud")
    if nrm and len(nrm) != len(pts):
        raise SceneFormatError("normals present on only some lines")
    return PointCloud(np.array(pts), np.array(nrm) if nrm else None)


def load_ply(path) -> PointCloud:
    """Minimal ASCII PLY reader for x/y/z (and optional nx/ny/nz) vertices."""
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        header = fh.readline().strip()
        if header != "ply":
            raise SceneFormatError("missing 'ply' magic", line=1)
        n_vertex = None
        props: list[str] = []
        lineno = 1
        in_vertex = False
        for line in fh:
            lineno += 1
            tok = line.split()
            if not tok:
                continue
            if tok[0] == "format":
                if tok[1] != "ascii":
                    raise SceneFormatError("only ascii PLY is supported", line=lineno)
            elif tok[0] == "element":
                in_vertex = tok[1] == "vertex"
                if in_vertex:
                    n_vertex = int(tok[2])
            elif tok[0] == "property" and in_vertex:
                props.append(tok[-1])
            elif tok[0] == "end_header":
                break
        if n_vertex is None:
            raise SceneFormatError("no vertex element in PLY header")
        for name in ("x", "y", "z"):
            if name not in props:
                raise SceneFormatError(f"PLY vertices lack property {name}")
        idx = {name: props.index(name) for name in props}
        has_n = all(n in props for n in ("nx", "ny", "nz"))
        pts = np.empty((n_vertex, 3))
        nrm = np.empty((n_vertex, 3)) if has_n else None
        for i in range(n_vertex):
            line = fh.readline()
            lineno += 1
            cols = line.split()
            if len(cols) < len(props):
                raise SceneFormatError("truncated vertex line", line=lineno)
            try:
                pts[i] = [float(cols[idx["x"]]), float(cols[idx["y"]]), float(cols[idx["z"]])]
                if has_n:
                    nrm[i] = [float(cols[idx["nx"]]), float(cols[idx["ny"]]), float(cols[idx["nz"]])]
            except ValueError:
                raise SceneFormatError("non-numeric vertex data", line=lineno) from None
    return PointCloud(pts, nrm)


def load_cloud(path) -> PointCloud:
    p = str(path)
    if p.lower().endswith(".ply"):
        return load_ply(path)
    return load_xyz(path)


# ---------------------------------------------------------------------------
# normals and plane segmentation
# ---------------------------------------------------------------------------

def estimate_normals(cloud: PointCloud, k: int = 16) -> PointCloud:
    """Per-point normals as the smallest principal axis of the k-neighborhood
    covariance, with curvature (surface variation) and the kNN graph attached.
    Normal signs point away from the cloud centroid where determinable."""
    n = len(cloud)
    if n < k + 1:
        raise TooFewPointsError(f"need at least {k + 1} points, got {n}")
    pts = cloud.points
    tree = cKDTree(pts, leafsize=64, balanced_tree=False, compact_nodes=False)
    _, idx = tree.query(pts, k=k + 1)
    nb = pts.astype(np.float32)[idx]
    nb -= nb.mean(axis=1, keepdims=True)
    cov = np.matmul(nb.transpose(0, 2, 1), nb)
    eigval, eigvec = np.linalg.eigh(cov)
    normals = eigvec[:, :, 0].astype(np.float64)
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    total = eigval.sum(axis=1)
    curvature = np.where(total > 0, eigval[:, 0] / np.where(total > 0, total, 1.0), 0.0)
    # orient outward from the centroid where the geometry determines a side
    outward = pts - pts.mean(axis=0)
    flip = np.einsum("ij,ij->i", normals, outward) < 0
    normals[flip] = -normals[flip]
    return PointCloud(pts, normals, curvature.astype(np.float64), idx[:, 1:])


def _smooth_normals(normals: np.ndarray, neighbors: np.ndarray,
                    passes: int = 2) -> np.ndarray:
    """Average each normal with its graph neighbors (sign-aligned).  Raw
    k-neighborhood normals carry several degrees of noise on centimeter-noise
    scans; the smoothed field is what the region-growing angle gate tests."""
    out = normals.astype(np.float32)
    for _ in range(passes):
        gathered = out[neighbors]
        signs = np.sign(np.einsum("nkj,nj->nk", gathered, out))
        signs[signs == 0] = 1.0
        out = (gathered * signs[..., None]).sum(axis=1) + out
        out = out / np.linalg.norm(out, axis=1, keepdims=True)
    return out


def detect_planes(cloud: PointCloud, cfg: FloorplanConfig | None = None) -> list[PlanarRegion]:
    """Greedy region growing on the kNN graph: seeds in ascending curvature
    order, growth to neighbors whose normal agrees with the region normal
    within angle_tol and whose point sits within dist_tol of the region plane.
    Regions are refit by total least squares as they grow and once at the end.
    """
    cfg = cfg or FloorplanConfig()
    if cloud.normals is None or cloud.neighbors is None:
        cloud = estimate_normals(cloud, cfg.k_neighbors)
    pts = cloud.points
    pts32 = pts.astype(np.float32)
    neighbors = cloud.neighbors
    normals = _smooth_normals(cloud.normals, neighbors)
    n = len(cloud)
    cos_tol = np.float32(math.cos(math.radians(cfg.angle_tol_deg)))
    dist_tol = np.float32(cfg.dist_tol)
    assigned = np.zeros(n, dtype=bool)
    order = np.argsort(cloud.curvature, kind="stable") if cloud.curvature is not None \
        else np.arange(n)
    regions: list[PlanarRegion] = []

    for seed in order:
        if assigned[seed]:
            continue
        plane_n = normals[seed]
        plane_c = pts32[seed]
        # first wave without bookkeeping: most points in noise shells and
        # clutter seed nothing, and there are a lot of them
        first = neighbors[seed]
        ok = (np.abs(normals[first] @ plane_n) >= cos_tol) & \
             (np.abs((pts32[first] - plane_c) @ plane_n) < dist_tol) & \
             ~assigned[first]
        if not ok.any():
            assigned[seed] = True
            continue
        member = np.zeros(n, dtype=bool)
        member[seed] = True
        grow = first[ok]
        member[grow] = True
        frontier = grow
        count = 1 + grow.size
        next_refit = 64
        while frontier.size:
            cand = neighbors[frontier].ravel()
            cand = cand[~assigned[cand] & ~member[cand]]  # duplicates remain
            if cand.size == 0:
                break
            ok_angle = np.abs(normals[cand] @ plane_n) >= cos_tol
            ok_dist = np.abs((pts32[cand] - plane_c) @ plane_n) < dist_tol
            grow = cand[ok_angle & ok_dist]
            if grow.size == 0:
                break
            grow = np.unique(grow)
            member[grow] = True
            count += grow.size
            frontier = grow
            if count >= next_refit:
                c64, n64 = _fit_plane(pts[member])
                if n64 @ normals[seed] < 0:
                    n64 = -n64
                plane_c = c64.astype(np.float32)
                plane_n = n64.astype(np.float32)
                next_refit *= 2
        idxs = np.nonzero(member)[0]
        assigned[idxs] = True
        if idxs.size >= cfg.min_inliers:
            c, nrm = _fit_plane(pts[idxs])
            if nrm @ normals[seed] < 0:
                nrm = -nrm
            d = (pts[idxs] - c) @ nrm
            regions.append(PlanarRegion(
                indices=idxs, normal=tuple(nrm), centroid=tuple(c),
                rms=float(np.sqrt(np.mean(d * d)))))
    return regions


def _fit_plane(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Total-least-squares plane: (centroid, unit normal)."""
    c = pts.mean(axis=0)
    q = pts - c
    cov = q.T @ q
    _, vec = np.linalg.eigh(cov)
    nrm = vec[:, 0]
    return c, nrm / np.linalg.norm(nrm)


# ---------------------------------------------------------------------------
# walls
# ---------------------------------------------------------------------------

def wall_candidates(planes: list[PlanarRegion], cloud: PointCloud,
                    cfg: FloorplanConfig | None = None) -> list[WallSegment]:
    """Keep vertical planes (horizontal normal within vertical_tol) that are
    either tall enough to be free-standing walls or reach the ceiling."""
    cfg = cfg or FloorplanConfig()
    ceiling_z = cfg.ceiling_z
    if ceiling_z is None and len(cloud):
        ceiling_z = float(np.quantile(cloud.points[:, 2], 0.995))
    out: list[WallSegment] = []
    sin_tol = math.sin(math.radians(cfg.vertical_tol_deg))
    for region in planes:
        nx, ny, nz = region.normal
        if abs(nz) > sin_tol:
            continue
        pts = cloud.points[region.indices]
        z_lo, z_hi = float(pts[:, 2].min()), float(pts[:, 2].max())
        height = z_hi - z_lo
        if height < cfg.min_height and (ceiling_z is None or
                                        z_hi < ceiling_z - cfg.ceiling_gap):
            continue
        # horizontal unit normal and the in-plane floor direction
        h = math.hypot(nx, ny)
        nx, ny = nx / h, ny / h
        dx, dy = -ny, nx
        cx, cy = region.centroid[0], region.centroid[1]
        s = (pts[:, 0] - cx) * dx + (pts[:, 1] - cy) * dy
        s_lo, s_hi = float(s.min()), float(s.max())
        width = s_hi - s_lo
        if width <= 0:
            continue
        a = Point2(cx + s_lo * dx, cy + s_lo * dy)
        b = Point2(cx + s_hi * dx, cy + s_hi * dy)
        out.append(WallSegment(
            centroid=region.centroid, normal=(nx, ny), height=height,
            width=width, inliers=int(region.indices.size),
            footprint=Segment2(a, b), z_top=z_hi))
    return out


# ---------------------------------------------------------------------------
# density clustering (from scratch)
# ---------------------------------------------------------------------------

def dbscan(n: int, eps: float, min_pts: int, dist) -> list[int]:
    """Plain density-based clustering over items 0..n-1 with a callable
    metric; returns labels with -1 for noise.  The eps-neighborhood includes
    the point itself, so min_pts=1 makes every point a core point."""
    labels = [None] * n
    neighborhoods = [[j for j in range(n) if dist(i, j) <= eps] for i in range(n)]
    cluster = 0
    for i in range(n):
        if labels[i] is not None:
            continue
        if len(neighborhoods[i]) < min_pts:
            labels[i] = -1
            continue
        labels[i] = cluster
        queue = list(neighborhoods[i])
        qi = 0
        while qi < len(queue):
            j = queue[qi]
            qi += 1
            if labels[j] == -1:
                labels[j] = cluster  # border point reached by a core point
            if labels[j] is not None:
                continue
            labels[j] = cluster
            if len(neighborhoods[j]) >= min_pts:
                queue.extend(neighborhoods[j])
        cluster += 1
    return labels


def angle_mod_pi(theta1: float, theta2: float) -> float:
    """Distance between undirected line orientations."""
    d = abs(theta1 - theta2) % math.pi
    return min(d, math.pi - d)


def cluster_walls(segments: list[WallSegment],
                  cfg: FloorplanConfig | None = None) -> list[list[int]]:
    """Two-stage grouping of wall segments into wall candidates:
    density clustering on orientation (mod 180 degrees), then on the signed
    perpendicular offset within each orientation cluster.  Noise points
    become singleton clusters so isolated true walls survive."""
    cfg = cfg or FloorplanConfig()
    if not segments:
        return []
    thetas = [math.atan2(s.direction[1], s.direction[0]) % math.pi for s in segments]
    eps1 = math.radians(cfg.eps_angle_deg)
    labels1 = dbscan(len(segments), eps1, cfg.min_pts,
                     lambda i, j: angle_mod_pi(thetas[i], thetas[j]))
    clusters: list[list[int]] = []
    for lab in _label_groups(labels1, len(segments)):
        # align members to the cluster's weighted mean orientation
        w = [segments[i].inliers for i in lab]
        base = thetas[lab[0]]
        mean2 = math.atan2(
            sum(wi * math.sin(2 * thetas[i]) for wi, i in zip(w, lab)),
            sum(wi * math.cos(2 * thetas[i]) for wi, i in zip(w, lab)))
        mean_theta = (mean2 / 2.0) % math.pi
        if angle_mod_pi(mean_theta, base) > math.pi / 4:
            mean_theta = (mean_theta + math.pi / 2) % math.pi  # guard branch flips
        nx, ny = -math.sin(mean_theta), math.cos(mean_theta)
        offsets = []
        for i in lab:
            c = segments[i].centroid
            offsets.append(c[0] * nx + c[1] * ny)
        labels2 = dbscan(len(lab), cfg.eps_offset, cfg.min_pts,
                         lambda a, b: abs(offsets[a] - offsets[b]))
        for sub in _label_groups(labels2, len(lab)):
            clusters.append(sorted(lab[i] for i in sub))
    clusters.sort()
    return clusters


def _label_groups(labels: list[int], n: int) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    singles: list[list[int]] = []
    for i in range(n):
        if labels[i] == -1:
            singles.append([i])
        else:
            groups.setdefault(labels[i], []).append(i)
    return [groups[k] for k in sorted(groups)] + singles


# ---------------------------------------------------------------------------
# line fitting
# ---------------------------------------------------------------------------

def fit_lines(clusters: list[list[int]], segments: list[WallSegment]) -> list[WallLine]:
    """Weighted total-least-squares 2D line per cluster, fit through the
    member footprints' endpoints (each weighted by half its segment's inlier
    count).  The point+direction parameterization has no slope singularity."""
    out: list[WallLine] = []
    for cluster in clusters:
        pts = []
        wts = []
        for i in cluster:
            seg = segments[i]
            for p in (seg.footprint.p1, seg.footprint.p2):
                pts.append((p.x, p.y))
                wts.append(seg.inliers / 2.0)
        p = np.asarray(pts)
        w = np.asarray(wts)
        mean = (p * w[:, None]).sum(axis=0) / w.sum()
        q = p - mean
        cov = (q * w[:, None]).T @ q
        _, vec = np.linalg.eigh(cov)
        direction = vec[:, 1]  # major axis
        direction = direction / np.linalg.norm(direction)
        # canonical sign for determinism
        if direction[0] < 0 or (direction[0] == 0 and direction[1] < 0):
            direction = -direction
        perp = q @ np.array([-direction[1], direction[0]])
        residual = float(np.sqrt((w * perp * perp).sum() / w.sum()))
        out.append(WallLine(point=(float(mean[0]), float(mean[1])),
                            direction=(float(direction[0]), float(direction[1])),
                            residual=residual,
                            segments=tuple(cluster),
                            weight=float(sum(segments[i].inliers for i in cluster))))
    return out


# ---------------------------------------------------------------------------
# room extraction
# ---------------------------------------------------------------------------

def _line_angle(line: WallLine) -> float:
    return math.atan2(line.direction[1], line.direction[0]) % math.pi


def _intersect(l1: WallLine, l2: WallLine) -> tuple[float, float] | None:
    d1, d2 = l1.direction, l2.direction
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(denom) < 1e-12:
        return None
    dx = l2.point[0] - l1.point[0]
    dy = l2.point[1] - l1.point[1]
    s = (dx * d2[1] - dy * d2[0]) / denom
    return l1.at(s)


def _covered_length(line: WallLine, segments: list[WallSegment],
                    lo: float, hi: float) -> float:
    """Length of [lo, hi] (line parameter space) covered by the projections of
    the line's member segment footprints."""
    spans = []
    for i in line.segments:
        f = segments[i].footprint
        s1 = line.param_of((f.p1.x, f.p1.y))
        s2 = line.param_of((f.p2.x, f.p2.y))
        a, b = min(s1, s2), max(s1, s2)
        a, b = max(a, lo), min(b, hi)
        if b > a:
            spans.append((a, b))
    spans.sort()
    covered = 0.0
    cur_lo = cur_hi = None
    for a, b in spans:
        if cur_hi is None or a > cur_hi:
            if cur_hi is not None:
                covered += cur_hi - cur_lo
            cur_lo, cur_hi = a, b
        else:
            cur_hi = max(cur_hi, b)
    if cur_hi is not None:
        covered += cur_hi - cur_lo
    return covered


@dataclass(frozen=True)
class _Candidate:
    corners: tuple
    coverage: float
    side_cov: tuple
    side_lines: tuple
    area: float
    dims: tuple


def extract_rooms(lines: list[WallLine], segments: list[WallSegment],
                  cfg: FloorplanConfig | None = None) -> FloorPlan:
    """Rectangles from pairs of parallel wall lines crossed with pairs of
    near-perpendicular parallel wall lines, scored by the fraction of their
    perimeter explained by wall segments and accepted greedily (coverage,
    then area, then corner order) without interior overlap.

    Raises NoRoomsFoundError when nothing reaches min_coverage (callers may
    treat that as the empty plan)."""
    cfg = cfg or FloorplanConfig()
    perp_tol = math.radians(cfg.perp_tol_deg)
    n = len(lines)
    angles = [_line_angle(l) for l in lines]
    parallel_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
                      if angle_mod_pi(angles[i], angles[j]) <= perp_tol]
    candidates: list[_Candidate] = []
    for pi in range(len(parallel_pairs)):
        i, j = parallel_pairs[pi]
        for pj in range(pi + 1, len(parallel_pairs)):
            k, l = parallel_pairs[pj]
            if len({i, j, k, l}) != 4:
                continue
            cross = angle_mod_pi(angles[i], angles[k])
            if abs(cross - math.pi / 2) > perp_tol:
                continue
            cand = _candidate_rect(lines, segments, (i, j), (k, l), cfg)
            if cand is not None:
                candidates.append(cand)
    candidates.sort(key=lambda c: (-c.coverage, -c.area,
                                   tuple((p.x, p.y) for p in c.corners)))
    accepted: list[_Candidate] = []
    for cand in candidates:
        if cand.coverage < cfg.min_coverage:
            continue
        if any(_rect_interiors_intersect(cand.corners, a.corners) for a in accepted):
            continue
        accepted.append(cand)
    if not accepted:
        raise NoRoomsFoundError("no rectangle candidate reached min_coverage")

    structures: list[FloorPlanStructure] = []
    counters = {"room": 0, "corridor": 0}
    for cand in accepted:
        major, minor = max(cand.dims), min(cand.dims)
        kind = "corridor" if major / minor >= cfg.corridor_aspect else "room"
        counters[kind] += 1
        poly = geometry.validate_polygon(cand.corners)
        _, axis, major_len, minor_len = geometry.rect_axis(poly)
        structures.append(FloorPlanStructure(
            id=f"{kind}{counters[kind]}", type=kind,
            corners=poly.vertices, coverage=cand.coverage,
            side_coverage=cand.side_cov, side_lines=cand.side_lines,
            major_axis=axis, major_len=major_len, minor_len=minor_len))

    adjacency = set()
    for a in structures:
        for b in structures:
            if a.id >= b.id:
                continue
            if _share_wall(a, b, lines):
                adjacency.add((a.id, b.id))
    return FloorPlan(tuple(structures), tuple(sorted(adjacency)))


def _candidate_rect(lines, segments, pair_a, pair_b, cfg) -> _Candidate | None:
    i, j = pair_a
    k, l = pair_b
    c_ik = _intersect(lines[i], lines[k])
    c_il = _intersect(lines[i], lines[l])
    c_jl = _intersect(lines[j], lines[l])
    c_jk = _intersect(lines[j], lines[k])
    if any(c is None for c in (c_ik, c_il, c_jl, c_jk)):
        return None
    corners = (Point2(*c_ik), Point2(*c_il), Point2(*c_jl), Point2(*c_jk))
    d_a = math.dist(c_ik, c_jk)   # separation of lines i and j
    d_b = math.dist(c_ik, c_il)   # separation of lines k and l
    if min(d_a, d_b) < cfg.min_dim:
        return None
    try:
        poly = geometry.validate_polygon(corners)
    except Exception:
        return None
    # per-side coverage, matched to generating lines on the validated (CCW)
    # ring: a side's generating line is the one both endpoints sit on
    ring = poly.vertices
    side_cov = []
    side_lines = []
    total_len = 0.0
    total_cov = 0.0
    for s in range(4):
        p, q = ring[s], ring[(s + 1) % 4]
        line_id = min(
            (i, j, k, l),
            key=lambda lid: max(abs(lines[lid].offset_of((p.x, p.y))),
                                abs(lines[lid].offset_of((q.x, q.y)))))
        line = lines[line_id]
        s1, s2 = line.param_of((p.x, p.y)), line.param_of((q.x, q.y))
        lo, hi = min(s1, s2), max(s1, s2)
        length = hi - lo
        cov = _covered_length(line, segments, lo, hi)
        side_cov.append(cov / length if length > 0 else 0.0)
        side_lines.append(line_id)
        total_len += length
        total_cov += cov
    coverage = total_cov / total_len if total_len > 0 else 0.0
    return _Candidate(corners=ring, coverage=coverage,
                      side_cov=tuple(side_cov), side_lines=tuple(side_lines),
                      area=poly.area, dims=(d_a, d_b))


def _rect_interiors_intersect(ca, cb, shrink: float = 0.02) -> bool:
    """Overlap test on slightly shrunken rectangles, so shared walls stay
    legal while genuine interior overlap is rejected."""
    def shrunk(corners):
        cx = sum(p.x for p in corners) / 4.0
        cy = sum(p.y for p in corners) / 4.0
        out = []
        for p in corners:
            vx, vy = p.x - cx, p.y - cy
            norm = math.hypot(vx, vy)
            f = max(0.0, 1.0 - shrink / norm) if norm > 0 else 0.0
            out.append((cx + vx * f, cy + vy * f))
        return out

    a = shrunk(ca)
    b = shrunk(cb)
    from .geometry import point_in_polygon
    if any(point_in_polygon(p, b) for p in a) or any(point_in_polygon(p, a) for p in b):
        return True
    edges_a = list(zip(a, a[1:] + a[:1]))
    edges_b = list(zip(b, b[1:] + b[:1]))
    return any(geometry._seg_intersect_2d(p1, p2, q1, q2)
               for p1, p2 in edges_a for q1, q2 in edges_b)


def _share_wall(a: FloorPlanStructure, b: FloorPlanStructure,
                lines: list[WallLine]) -> bool:
    """Adjacent iff some generating wall line serves a side of both and the
    two sides' extents on that line overlap."""
    for sa, la in enumerate(a.side_lines):
        for sb, lb in enumerate(b.side_lines):
            if la != lb or la < 0:
                continue
            line = lines[la]
            pa = [a.corners[sa], a.corners[(sa + 1) % 4]]
            pb = [b.corners[sb], b.corners[(sb + 1) % 4]]
            ia = sorted(line.param_of((p.x, p.y)) for p in pa)
            ib = sorted(line.param_of((p.x, p.y)) for p in pb)
            if min(ia[1], ib[1]) - max(ia[0], ib[0]) > 1e-6:
                return True
    return False


# ---------------------------------------------------------------------------
# queries and orchestration
# ---------------------------------------------------------------------------

def locate(point: Point2, plan: FloorPlan) -> str | None:
    """Id of the structure containing the point; boundary points resolve to
    the nearest centroid; None when outside every structure."""
    from .geometry import point_in_polygon
    hits = []
    for s in plan.structures:
        chain = [(c.x, c.y) for c in s.corners]
        if point_in_polygon((point.x, point.y), chain):
            hits.append(s)
    if not hits:
        return None
    if len(hits) == 1:
        return hits[0].id
    def centroid_dist(s):
        cx, cy = s.center()
        return (math.hypot(point.x - cx, point.y - cy), s.id)
    return min(hits, key=centroid_dist).id


@dataclass
class PipelineStats:
    points: int = 0
    planes: int = 0
    walls: int = 0
    lines: int = 0
    rooms: int = 0
    corridors: int = 0
    warnings: list[str] = field(default_factory=list)


def build_floorplan(cloud: PointCloud, cfg: Config | None = None
                    ) -> tuple[FloorPlan, PipelineStats]:
    """Run the full pipeline; an empty plan (with a warning in the stats) is
    returned when no room candidate survives."""
    cfg = cfg or Config()
    fp = cfg.floorplan
    stats = PipelineStats(points=len(cloud))
    if cloud.normals is None or cloud.neighbors is None:
        cloud = estimate_normals(cloud, fp.k_neighbors)
    planes = detect_planes(cloud, fp)
    stats.planes = len(planes)
    walls = wall_candidates(planes, cloud, fp)
    stats.walls = len(walls)
    if not walls:
        stats.warnings.append("no wall candidates found")
        return FloorPlan((), ()), stats
    clusters = cluster_walls(walls, fp)
    lines = fit_lines(clusters, walls)
    stats.lines = len(lines)
    try:
        plan = extract_rooms(lines, walls, fp)
    except NoRoomsFoundError as exc:
        stats.warnings.append(str(exc))
        return FloorPlan((), ()), stats
    stats.rooms = sum(1 for s in plan.structures if s.type == "room")
    stats.corridors = sum(1 for s in plan.structures if s.type == "corridor")
    return plan, stats


def scene_with_structures(scene: sth.SceneRecording, plan: FloorPlan) -> sth.SceneRecording:
    """Extend a recording with static histories for the plan's structures so
    that locomotion fluents (moving_into, passes, ...) can reference them."""
    span = scene.span()
    if span is None:
        return scene
    histories = dict(scene.histories)
    for s in plan.structures:
        obj = sth.DomainObject(s.id, sth.ObjectKind.FLOORPLAN_STRUCTURE,
                               class_label=s.type)
        poly = s.polygon()
        histories[s.id] = sth.SpaceTimeHistory(obj, (span.t1, span.t2), (poly, poly))
    return sth.SceneRecording(histories, frame_rate=scene.frame_rate, frame=scene.frame)


# ---------------------------------------------------------------------------
# debug rendering
# ---------------------------------------------------------------------------

def render_svg(plan: FloorPlan, walls: list[WallSegment] | None = None,
               scale: float = 60.0) -> str:
    """Simple SVG of wall footprints and extracted structures."""
    xs, ys = [], []
    for s in plan.structures:
        xs.extend(c.x for c in s.corners)
        ys.extend(c.y for c in s.corners)
    for w in walls or []:
        xs.extend([w.footprint.p1.x, w.footprint.p2.x])
        ys.extend([w.footprint.p1.y, w.footprint.p2.y])
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    pad = 0.5
    x0, y0 = min(xs) - pad, min(ys) - pad
    x1, y1 = max(xs) + pad, max(ys) + pad

    def sx(x):
        return (x - x0) * scale

    def sy(y):
        return (y1 - y) * scale

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'width="{sx(x1):.0f}" height="{sy(y0):.0f}" '
             f'viewBox="0 0 {sx(x1):.0f} {sy(y0):.0f}">']
    for s in plan.structures:
        pts = " ".join(f"{sx(c.x):.1f},{sy(c.y):.1f}" for c in s.corners)
        fill = "#cfe8ff" if s.type == "room" else "#ffe9c0"
        parts.append(f'<polygon points="{pts}" fill="{fill}" stroke="#3465a4" '
                     f'stroke-width="1.5"/>')
        cx, cy = s.center()
        parts.append(f'<text x="{sx(cx):.1f}" y="{sy(cy):.1f}" font-size="14" '
                     f'text-anchor="middle">{s.id}</text>')
    for w in walls or []:
        f = w.footprint
        parts.append(f'<line x1="{sx(f.p1.x):.1f}" y1="{sy(f.p1.y):.1f}" '
                     f'x2="{sx(f.p2.x):.1f}" y2="{sy(f.p2.y):.1f}" '
                     f'stroke="#cc0000" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
