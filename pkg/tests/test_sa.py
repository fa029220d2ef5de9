import math

import numpy as np
import pytest

from hassa import (
    IsingModel,
    SaMode,
    SaSchedule,
    ScheduleConfig,
    XorShift32,
    hamiltonian,
    maxcut_to_ising,
    metropolis_accept,
    random_graph,
    sa_run,
    sa_temperature,
)


class TestSchedule:
    def test_endpoints(self):
        s = SaSchedule()
        assert sa_temperature(s, 0) == 10.0
        assert sa_temperature(s, 89_999) == pytest.approx(1e-7, rel=1e-12)
        temps = s.temperatures()
        assert temps.size == 90_000 and temps[0] == 10.0
        assert temps[-1] == pytest.approx(1e-7, rel=1e-12)
        assert np.all(np.diff(temps) < 0)

    def test_vector_matches_scalar(self):
        s = SaSchedule(total_cycles=1000)
        temps = s.temperatures()
        for c in (0, 1, 333, 999):
            assert temps[c] == pytest.approx(sa_temperature(s, c), rel=1e-12)

    def test_mirrored(self):
        s = SaSchedule(mode=SaMode.MIRRORED_SSA)
        assert sa_temperature(s, 250) == 0.25
        assert sa_temperature(s, 599) == 1 / 32
        assert sa_temperature(s, 600) == 1.0
        assert s.temperatures()[250] == 0.25

    def test_constant(self):
        s = SaSchedule(t_start=2.0, t_end=2.0, total_cycles=50)
        assert set(s.temperatures()) == {2.0}

    @pytest.mark.parametrize("kwargs", [dict(t_end=20.0), dict(t_start=0.0), dict(total_cycles=0)])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            SaSchedule(**kwargs)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            sa_temperature(SaSchedule(total_cycles=10), 10)


class TestAcceptance:
    def test_downhill_consumes_no_randomness(self):
        r = XorShift32(5)
        assert metropolis_accept(0, 1.0, r) and metropolis_accept(-3, 1e-9, r)
        assert r.state == 5

    @pytest.mark.parametrize("delta,temp", [(2, 1.0), (4, 3.0), (1, 0.5), (8, 10.0)])
    def test_empirical_rate(self, delta, temp):
        r = XorShift32(1000 + delta)
        hits = sum(metropolis_accept(delta, temp, r) for _ in range(100_000))
        assert abs(hits / 100_000 - math.exp(-delta / temp)) < 0.01


class TestRun:
    def test_greedy_limit_never_goes_uphill(self):
        g = random_graph(30, 70, seed=2)
        model = maxcut_to_ising(g)
        res = sa_run(model, SaSchedule(t_start=1e-12, t_end=1e-12, total_cycles=3000), 4,
                     graph=g, record_energy=True)
        assert np.all(np.diff(res.energy_series) <= 0)

    def test_two_spin_ferromagnet_from_antialigned(self):
        model = IsingModel([0, 0], {(0, 1): 1})
        sched = SaSchedule(t_start=10.0, t_end=10.0, total_cycles=1000)
        # from the +1 state every proposal is downhill, so the first cycle aligns
        hits = sum(sa_run(model, sched, s, initial=[1, -1]).best_energy == -1 for s in range(1, 201))
        assert hits / 200 >= 0.99

    def test_backends_identical_with_delta_check(self):
        for seed in range(4):
            g = random_graph(25, 60, seed=seed, weights=(-2, -1, 1, 2))
            model = maxcut_to_ising(g)
            sched = SaSchedule(t_start=3.0, t_end=0.01, total_cycles=2000)
            a = sa_run(model, sched, seed + 1, graph=g, record_energy=True)
            b = sa_run(model, sched, seed + 1, graph=g, record_energy=True, backend="python",
                       check_delta=True)
            assert np.array_equal(a.energy_series, b.energy_series)
            assert a.best_state == b.best_state and a.best_cycle == b.best_cycle

    def test_sweep_mode_matches_python(self):
        g = random_graph(12, 20, seed=1)
        model = maxcut_to_ising(g)
        sched = SaSchedule(t_start=2.0, t_end=0.1, total_cycles=50, sweep=True)
        a = sa_run(model, sched, 3, record_energy=True)
        b = sa_run(model, sched, 3, record_energy=True, backend="python", check_delta=True)
        assert np.array_equal(a.energy_series, b.energy_series)

    def test_best_is_no_worse_than_final(self):
        g = random_graph(40, 100, seed=5)
        model = maxcut_to_ising(g)
        res = sa_run(model, SaSchedule(total_cycles=5000), 8, graph=g)
        assert res.best_energy <= hamiltonian(model, res.final_state)
        assert res.best_energy == hamiltonian(model, res.best_state)
        assert res.best_cut == (g.total_weight - res.best_energy) // 2

    def test_observer(self):
        model = IsingModel([1, -1, 0], {(0, 2): 1})
        seen = []
        sa_run(model, SaSchedule(total_cycles=20, mode="mirrored", ssa=ScheduleConfig(tau=2, i0_max=4)),
               9, observer=lambda c, t, e: seen.append((c, t, e)))
        assert [c for c, _, _ in seen] == list(range(20))
        assert [t for _, t, _ in seen[:6]] == [1.0, 1.0, 0.5, 0.5, 0.25, 0.25]

    def test_bad_arguments(self):
        model = IsingModel([0, 0])
        with pytest.raises(ValueError):
            sa_run(model, SaSchedule(total_cycles=5), 1, initial=[1, 1, 1])
        with pytest.raises(ValueError):
            sa_run(model, SaSchedule(total_cycles=5), 1, backend="gpu")

    def test_deterministic(self):
        g = random_graph(30, 60, seed=7)
        model = maxcut_to_ising(g)
        a = sa_run(model, SaSchedule(total_cycles=3000), 77, record_energy=True)
        b = sa_run(model, SaSchedule(total_cycles=3000), 77, record_energy=True)
        assert np.array_equal(a.energy_series, b.energy_series)
