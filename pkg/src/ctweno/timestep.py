"""Strong-stability-preserving time integration of the staggered state.

Two tableaus cover all spatial orders: the classic three-stage
third-order method, and a five-stage fourth-order method with a large
stability radius for the fifth-order-and-up reconstructions.  Both are
kept in convex (Shu-Osher) form, where each stage is a nonnegative
blend of earlier stage states plus forward-Euler tendencies, so any
convex-invariant-preserving property of a single Euler step carries
over to the full step.

Zone and face fields advance together: tendencies from one right-hand
side evaluation update the interior zones and the interior faces
(including wall faces) in lockstep, which keeps the face increments
divergence-free over an arbitrary number of stages.
"""

import math
from dataclasses import dataclass

import numpy as np

from .scheme import StaggeredState


@dataclass(frozen=True)
class Tableau:
    """Convex-form coefficients: stage i blends states/tendencies 0..i-1."""

    name: str
    order: int
    stages: tuple  # ((alphas, betas), ...) per stage, rows over prior states

    @property
    def nstages(self):
        return len(self.stages)

    def butcher(self):
        """Equivalent Butcher arrays (A, b, c) for order-condition checks."""
        s = self.nstages
        rows = [np.zeros(s)]  # state 0 is the input; no tendencies yet
        for al, be in self.stages:
            r = np.zeros(s)
            for k, a in enumerate(al):
                r += a * rows[k]
            for k, b in enumerate(be):
                r[k] += b
            rows.append(r)
        A = np.array(rows[:s])
        b = rows[s]
        return A, b, A.sum(axis=1)

    def stage_times(self):
        """Fraction of the step each stage state sits at (last entry 1)."""
        A, b, c = self.butcher()
        return tuple(c) + (1.0,)


SSP3 = Tableau(
    name="ssp3",
    order=3,
    stages=(
        ((1.0,), (1.0,)),
        ((0.75, 0.25), (0.0, 0.25)),
        ((1.0 / 3.0, 0.0, 2.0 / 3.0), (0.0, 0.0, 2.0 / 3.0)),
    ),
)

SSP54 = Tableau(
    name="ssp54",
    order=4,
    stages=(
        ((1.0,),
         (0.391752226571890,)),
        ((0.444370493651235, 0.555629506348765),
         (0.0, 0.368410593050371)),
        ((0.620101851488403, 0.0, 0.379898148511597),
         (0.0, 0.0, 0.251891774271694)),
        ((0.178079954393132, 0.0, 0.0, 0.821920045606868),
         (0.0, 0.0, 0.0, 0.544974750228521)),
        ((0.0, 0.0, 0.517231671970585, 0.096059710526147,
          0.386708617503269),
         (0.0, 0.0, 0.0, 0.063692468666290, 0.226007483236906)),
    ),
)


def tableau_for(order):
    """Time discretisation paired with a spatial order."""
    return SSP3 if order <= 3 else SSP54


def cfl_dt(grid, max_speeds, cfl):
    """Largest stable step for given per-axis signal speeds."""
    total = sum(s / d for s, d in zip(max_speeds, grid.spacing))
    if total <= 0.0:
        return math.inf
    return cfl / total


def refine_factor(order):
    """Step shrink per mesh doubling that keeps time error subordinate.

    Third order in time matches third order in space, so dt simply
    halves.  The fourth-order tableau under a space order r needs
    dt ~ dx^(r/4) for the time error to fall at least as fast as the
    spatial error.
    """
    if order <= 3:
        return 0.5
    return 0.5 ** (order / 4.0)


class Integrator:
    """Marches a scheme's state with the tableau matched to its order.

    With a positivity stepper attached, every forward-Euler building
    block of each stage routes through its protected update, so the
    convex stage combinations inherit admissibility from the pieces.
    """

    def __init__(self, scheme, tableau=None, pcp=None):
        self.scheme = scheme
        self.tableau = tableau or tableau_for(scheme.order)
        self.pcp = pcp
        self.last_pcp_stats = None

    def advance(self, state, dt, rhs0=None):
        """One full step of size dt; returns a fresh state at time+dt.

        ``rhs0`` lets a caller reuse the evaluation it made to pick dt.
        """
        if self.pcp is not None:
            return self._advance_protected(state, dt, rhs0)
        frac = self.tableau.stage_times()
        states = [state]
        rhss = [rhs0 if rhs0 is not None else self.scheme.full_rhs(state)]
        nst = self.tableau.nstages
        for i, (al, be) in enumerate(self.tableau.stages):
            new = self._combine(states, rhss, al, be, dt)
            new.time = state.time + frac[i + 1] * dt
            states.append(new)
            if i + 1 < nst:
                rhss.append(self.scheme.full_rhs(new))
        return states[-1]

    def step(self, state, cfl):
        """Pick dt from the current signal speeds, then advance.

        Returns (new_state, dt, rhs0); the evaluation that fixed dt is
        reused as the first stage.
        """
        protected = self.pcp is not None
        rhs0 = self.scheme.full_rhs(state, want_fluxes=protected,
                                    guarded=protected)
        dt = cfl_dt(state.grid, rhs0.max_speeds, cfl)
        return self.advance(state, dt, rhs0=rhs0), dt, rhs0

    def _advance_protected(self, state, dt, rhs0):
        """Stage loop in explicit convex form, one protected Euler per term.

        Each tendency term beta_k*dt*L(u_k) inside a stage with state
        weight alpha_k > 0 is realised as alpha_k times the protected
        Euler step of u_k over dt*beta_k/alpha_k, which is exactly the
        decomposition the stability theory of these tableaus rests on.
        """
        frac = self.tableau.stage_times()
        states = [state]
        cache = {}
        stats = {"troubled": 0, "lowered": 0, "rounds": 0, "energy_reset": 0.0}

        def piece(k, eff_dt):
            key = (k, eff_dt)
            if key not in cache:
                pre = rhs0 if (k == 0 and rhs0 is not None) else None
                out, _ = self.pcp.pcp_forward_euler(states[k], eff_dt, rhs=pre)
                ps = self.pcp.last_stats
                stats["troubled"] = max(stats["troubled"], ps["troubled"])
                stats["lowered"] = max(stats["lowered"], ps["lowered"])
                stats["rounds"] += ps["rounds"]
                stats["energy_reset"] += ps["energy_reset"]
                cache[key] = out
            return cache[key]

        for i, (al, be) in enumerate(self.tableau.stages):
            zones = None
            faces = None
            for k, a in enumerate(al):
                b = be[k] if k < len(be) else 0.0
                if a == 0.0 and b == 0.0:
                    continue
                if b == 0.0:
                    src = states[k]
                elif a > 0.0:
                    src = piece(k, dt * b / a)
                else:
                    raise ValueError(
                        "stage has a tendency with no matching state weight; "
                        "the tableau is not in convex Euler form")
                if zones is None:
                    zones = a * src.zones
                    faces = {fam: [a * arr for arr in lst]
                             for fam, lst in src.faces.items()}
                else:
                    zones += a * src.zones
                    for fam, lst in src.faces.items():
                        for ax, arr in enumerate(lst):
                            faces[fam][ax] += a * arr
            states.append(StaggeredState(state.grid, zones, faces,
                                         state.time + frac[i + 1] * dt))
        self.last_pcp_stats = stats
        return states[-1]

    @staticmethod
    def _combine(states, rhss, alphas, betas, dt):
        zones = None
        for k, a in enumerate(alphas):
            if a == 0.0:
                continue
            term = a * states[k].zones
            zones = term if zones is None else zones + term
        for k, b in enumerate(betas):
            if b != 0.0:
                zones = zones + (dt * b) * rhss[k].du_dt

        faces = {}
        for fam in states[0].faces:
            faces[fam] = []
            for ax in range(len(states[0].faces[fam])):
                acc = None
                for k, a in enumerate(alphas):
                    if a == 0.0:
                        continue
                    term = a * states[k].faces[fam][ax]
                    acc = term if acc is None else acc + term
                for k, b in enumerate(betas):
                    if b != 0.0:
                        acc = acc + (dt * b) * rhss[k].db_dt[fam][ax]
                faces[fam].append(acc)
        return StaggeredState(states[0].grid, zones, faces, states[0].time)
