"""Small model zoo: the worked instances used across tests, docs and the
shipped fixture files.

``triple_diamond`` is the seven-state automaton whose three independence
squares induce three fully concurrent events; ``full_cube`` is the same
process completed to all eight states.  ``two_mutex_net`` is the pair of
events serialized by one shared marked place; dropping the shared place
makes them concurrent.
"""

from __future__ import annotations

from .models import Acr, EventStructure, PetriNet, TransitionSystem, make_acr, make_event_structure, make_pn, make_ts


def triple_diamond_acr() -> Acr:
    """Three events a, b, c with a,c and b,c independent at the root and
    a,b independent after c; seven states."""
    return make_acr(
        states=["x", "x1", "x2", "x3", "y1", "y2", "y"],
        initial="x",
        events=["a", "b", "c"],
        trans=[
            ("x", "a", "x1"), ("x", "b", "x2"), ("x", "c", "x3"),
            ("x1", "c", "y1"), ("x2", "c", "y2"),
            ("x3", "a", "y1"), ("x3", "b", "y2"),
            ("y1", "b", "y"), ("y2", "a", "y"),
        ],
        indep=[("x", "a", "c"), ("x", "b", "c"), ("x3", "a", "b")],
    )


def full_cube_acr() -> Acr:
    """Eight states, twelve edges, all six faces independent: the automaton
    of three fully concurrent events."""
    return make_acr(
        states=["x", "x1", "x2", "x3", "y1", "y2", "y3", "y"],
        initial="x",
        events=["a", "b", "c"],
        trans=[
            ("x", "a", "x1"), ("x", "b", "x2"), ("x", "c", "x3"),
            ("x1", "b", "y3"), ("x1", "c", "y1"),
            ("x2", "a", "y3"), ("x2", "c", "y2"),
            ("x3", "a", "y1"), ("x3", "b", "y2"),
            ("y3", "c", "y"), ("y1", "b", "y"), ("y2", "a", "y"),
        ],
        indep=[
            ("x", "a", "b"), ("x", "a", "c"), ("x", "b", "c"),
            ("x1", "b", "c"), ("x2", "a", "c"), ("x3", "a", "b"),
        ],
    )


def three_free_events_es() -> EventStructure:
    return make_event_structure("abc")


def mutex_square_ts() -> TransitionSystem:
    """Two events from a common state closing into a diamond."""
    return make_ts(
        states=["x", "y1", "y2", "z"],
        initial="x",
        events=["e1", "e2"],
        trans=[("x", "e1", "y1"), ("x", "e2", "y2"),
               ("y1", "e2", "z"), ("y2", "e1", "z")],
    )


def mutex_square_acr(independent: bool) -> Acr:
    t = mutex_square_ts()
    indep = [("x", "e1", "e2")] if independent else []
    return make_acr(t.states, t.initial, t.events, t.trans, indep)


def two_mutex_net(shared_place: bool = True) -> PetriNet:
    """Two events, each with a private consumed place, a private produced
    place and a private side place; one shared marked place serializes them
    when present."""
    places = list("abcdefgi") + (["h"] if shared_place else [])
    shared = {"h": 1} if shared_place else {}
    return make_pn(
        places=places,
        m0={"a": 1, "b": 1, "c": 1, "f": 1, "g": 1, **shared},
        events=["e1", "e2"],
        pre={"e1": {"b": 1, "f": 1, **shared}, "e2": {"c": 1, "g": 1, **shared}},
        post={"e1": {"d": 1, "f": 1, **shared}, "e2": {"e": 1, "g": 1, **shared}},
    )


def double_token_net() -> PetriNet:
    """One event whose precondition fits twice in the initial marking, so
    the event is concurrent with itself."""
    return make_pn(["p", "q"], {"p": 2}, ["e"], {"e": {"p": 1}}, {"e": {"q": 1}})
