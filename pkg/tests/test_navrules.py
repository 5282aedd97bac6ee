import pytest

from scenesem import floorplan as fp
from scenesem import navrules as nav
from scenesem import sth
from scenesem.config import Config
from scenesem.errors import TrackOutsideStructureError, UnknownStructureError
from scenesem.geometry import Point2

from tracks import hold_track, linear_track, scene_from_tracks

CFG = Config()

PLAN = fp.plan_from_dict({
    "structures": [
        {"id": "room1", "type": "room",
         "corners": [[-1, -5], [3, -5], [3, 0], [-1, 0]]},
        {"id": "corridor2", "type": "corridor",
         "corners": [[0, 0], [2, 0], [2, 10], [0, 10]]},
        {"id": "room2", "type": "room",
         "corners": [[-1, 10], [3, 10], [3, 15], [-1, 15]]},
    ],
    "adjacency": [["room1", "corridor2"], ["corridor2", "room2"]],
})

ROBOT_PATH = nav.PlannedPath("robot", (Point2(1, -2), Point2(1, 5), Point2(1, 12)))


def world_with(tracks=None):
    tracks = tracks or {}
    if not tracks:
        tracks = {"idle": hold_track((50.0, 50.0, 0.0), 0.0, 12.0, 0.1)}
        kinds = {"idle": sth.ObjectKind.PERSON}
    else:
        kinds = {oid: sth.ObjectKind.PERSON for oid in tracks}
    scene = scene_from_tracks(tracks, kinds=kinds, frame="map")
    return nav.WorldState(PLAN, scene, ROBOT_PATH)


def walker(y0, y1, t0=0.0, t1=12.0):
    return linear_track((1.0, y0, 0.0), (1.0, y1, 0.0), t0, t1, 0.1)


class TestTransitDirection:
    corridor = PLAN.structure("corridor2")

    def test_south_to_north(self):
        pts = [Point2(1.0, y) for y in (-1.0, 2.0, 5.0, 9.0, 11.0)]
        assert nav.transit_direction(pts, self.corridor) == 1

    def test_north_to_south(self):
        pts = [Point2(1.0, y) for y in (11.0, 9.0, 5.0, 2.0, -1.0)]
        assert nav.transit_direction(pts, self.corridor) == -1

    def test_loiterer_none(self):
        pts = [Point2(1.0, 5.0 + dy) for dy in (0.0, 0.05, -0.05, 0.02)]
        assert nav.transit_direction(pts, self.corridor) is None

    def test_outside_track_raises(self):
        pts = [Point2(40.0, 40.0), Point2(41.0, 41.0)]
        with pytest.raises(TrackOutsideStructureError):
            nav.transit_direction(pts, self.corridor)


class TestPossAt:
    action = nav.ControlAction("enter", "corridor2")

    def test_empty_corridor_rule1(self):
        verdict = nav.poss_at(self.action, 6.0, world_with(), CFG)
        assert verdict.possible and verdict.rule == 1

    def test_same_direction_possible(self):
        world = world_with({"p1": walker(-1.0, 11.0)})
        verdict = nav.poss_at(self.action, 6.0, world, CFG)
        assert verdict.possible and verdict.rule == 2
        assert "p1" in verdict.explanation

    def test_opposing_impossible(self):
        world = world_with({"p1": walker(11.0, -1.0)})
        verdict = nav.poss_at(self.action, 6.0, world, CFG)
        assert not verdict.possible
        assert verdict.blocking == ("p1",)
        assert "p1" in verdict.explanation

    def test_loiterer_impossible(self):
        world = world_with({"p1": hold_track((1.0, 5.0, 0.0), 0.0, 12.0, 0.1)})
        verdict = nav.poss_at(self.action, 6.0, world, CFG)
        assert not verdict.possible
        assert verdict.blocking == ("p1",)

    def test_rule1_dominates_trajectories(self):
        # an opposing walker who has not yet entered the corridor at t
        world = world_with({"p1": walker(13.0, -1.0, 0.0, 14.0)})
        # at t=1.0 the person is at y=12 (room2), not in the corridor
        verdict = nav.poss_at(self.action, 1.0, world, CFG)
        assert verdict.possible and verdict.rule == 1

    def test_non_corridor_unconstrained(self):
        world = world_with({"p1": hold_track((1.0, -2.0, 0.0), 0.0, 12.0, 0.1)})
        verdict = nav.poss_at(nav.ControlAction("enter", "room1"), 6.0, world, CFG)
        assert verdict.possible and verdict.rule == 0

    def test_unknown_structure(self):
        with pytest.raises(UnknownStructureError):
            nav.poss_at(nav.ControlAction("enter", "atrium9"), 0.0, world_with(), CFG)

    def test_reversed_path_flips_verdict(self):
        world_fwd = world_with({"p1": walker(-1.0, 11.0)})
        verdict_fwd = nav.poss_at(self.action, 6.0, world_fwd, CFG)
        rev_path = nav.PlannedPath("robot", tuple(reversed(ROBOT_PATH.waypoints)))
        world_rev = nav.WorldState(PLAN, world_fwd.scene, rev_path)
        verdict_rev = nav.poss_at(self.action, 6.0, world_rev, CFG)
        assert verdict_fwd.possible != verdict_rev.possible

    def test_time_perturbation_stable(self):
        world = world_with({"p1": walker(11.0, -1.0)})
        verdicts = [nav.poss_at(self.action, 6.0 + dt, world, CFG).possible
                    for dt in (-0.04, 0.0, 0.04)]
        assert len(set(verdicts)) == 1

    def test_two_persons_one_opposing_blocks(self):
        world = world_with({"p1": walker(-1.0, 11.0), "p2": walker(11.0, -1.0)})
        verdict = nav.poss_at(self.action, 6.0, world, CFG)
        assert not verdict.possible
        assert verdict.blocking == ("p2",)


class TestPlanCheck:
    def test_structures_in_path_order(self):
        results = nav.plan_check(ROBOT_PATH, world_with(), 6.0, CFG)
        assert [sid for sid, _ in results] == ["room1", "corridor2", "room2"]
        assert all(v.possible for _, v in results)

    def test_opposing_pedestrian_blocks_corridor_only(self):
        world = world_with({"p1": walker(11.0, -1.0)})
        results = dict(nav.plan_check(ROBOT_PATH, world, 6.0, CFG))
        assert results["room1"].possible
        assert results["room2"].possible
        assert not results["corridor2"].possible

    def test_path_inside_single_room(self):
        path = nav.PlannedPath("robot", (Point2(0.0, -4.0), Point2(2.0, -1.0)))
        world = nav.WorldState(PLAN, world_with().scene, path)
        results = nav.plan_check(path, world, 6.0, CFG)
        assert [sid for sid, _ in results] == ["room1"]
