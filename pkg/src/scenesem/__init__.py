"""scenesem: commonsense qualitative spatio-temporal semantics for embodied
activity recordings — relations, motion fluents, interaction recognition,
floor-plan extraction from point clouds, and navigation feasibility rules."""

from .config import CalculiConfig, Config, FloorplanConfig, PatternConfig, load_config
from .geometry import (
    AABox,
    OrientedPoint,
    Point2,
    Point3,
    Polygon2,
    Polyline,
    Polyline2,
    Segment,
    Segment2,
    Sphere,
    TimeInterval,
    angle_between,
    distance,
    project_to_floor,
    size,
    validate_polygon,
)
from .calculi import (
    AllenRelation,
    LrRelation,
    OrientLabel,
    QdcRelation,
    Rcc5Relation,
    Rcc8Relation,
    RectAlgRelation,
    allen,
    lr,
    orient_pair,
    qdc,
    rcc5_coarsen,
    rcc8,
    rect_algebra,
)
from .sth import (
    BODY_JOINTS,
    BodyPose,
    DomainObject,
    ObjectKind,
    SceneRecording,
    SpaceTimeHistory,
    angle_at,
    distance_at,
    entity_at,
    movement_direction,
    movement_velocity,
    position,
    rotation,
    size_at,
)
from .fluents import (
    Fluent,
    FluentInterval,
    PatternEvaluator,
    detect_intervals,
    eval_approaching,
    holds_at,
    holds_in,
    motion_pattern,
)
from .interactions import (
    InteractionDef,
    InteractionEvent,
    builtin_defs,
    grounding_report,
    occurs_in_query,
    recognize,
    verify_event,
)
from .floorplan import (
    FloorPlan,
    FloorPlanStructure,
    PointCloud,
    WallLine,
    WallSegment,
    build_floorplan,
    cluster_walls,
    detect_planes,
    estimate_normals,
    extract_rooms,
    fit_lines,
    load_cloud,
    locate,
    scene_with_structures,
    wall_candidates,
)
from .navrules import ControlAction, PlannedPath, Verdict, WorldState, plan_check, poss_at

__version__ = "0.1.0"
