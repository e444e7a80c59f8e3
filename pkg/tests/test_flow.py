"""Fixed-step gradient flow: initialization, projection, recording, descent."""

import numpy as np
import pytest

from pairphase import (
    FlowConfig,
    KernelParam,
    SolverConfig,
    energy,
    initial_condition,
    minimize,
    run_flow,
)


class TestFlowConfig:
    def test_defaults(self):
        flow = FlowConfig()
        assert flow.step_size == 0.05
        assert flow.steps == 20_000
        assert flow.record_every == 50
        assert flow.initial_shift == 0.02

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"step_size": 0.0},
            {"step_size": -0.1},
            {"steps": 0},
            {"record_every": 0},
            {"initial_shift": -0.01},
            {"initial_shift": 0.2},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            FlowConfig(**kwargs)


class TestInitialCondition:
    def test_shifted_uniform_grid(self):
        config = initial_condition(5, FlowConfig(initial_shift=0.02))
        assert np.allclose(
            config.points, [0.02, 0.26, 0.5, 0.74, 0.98], atol=1e-15
        )

    def test_zero_shift_hits_endpoints(self):
        config = initial_condition(4, FlowConfig(initial_shift=0.0))
        assert config.points[0] == 0.0
        assert config.points[-1] == 1.0

    def test_rejects_single_point(self):
        with pytest.raises(ValueError):
            initial_condition(1, FlowConfig())


class TestRunFlow:
    def test_frame_recording_pattern(self):
        flow = FlowConfig(steps=100, record_every=30)
        trajectory = run_flow(4, KernelParam(1.0), flow)
        assert [step for step, _ in trajectory.frames] == [0, 30, 60, 90, 100]

    def test_final_frame_always_recorded(self):
        flow = FlowConfig(steps=500, record_every=1000)
        trajectory = run_flow(3, KernelParam(1.0), flow)
        assert [step for step, _ in trajectory.frames] == [0, 500]
        assert trajectory.final is trajectory.frames[-1][1]

    def test_energy_nonincreasing_along_frames(self):
        kernel = KernelParam(1.0)
        flow = FlowConfig(steps=2000, record_every=50)
        trajectory = run_flow(6, kernel, flow)
        values = [energy(config, kernel) for _, config in trajectory.frames]
        assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))

    def test_iterates_stay_in_unit_interval(self):
        flow = FlowConfig(steps=300, record_every=25)
        trajectory = run_flow(5, KernelParam(2.0), flow)
        for _, config in trajectory.frames:
            assert config.points[0] >= 0.0
            assert config.points[-1] <= 1.0

    def test_reaches_global_minimum_at_q_one(self):
        kernel = KernelParam(1.0)
        trajectory = run_flow(6, kernel, FlowConfig(steps=5000))
        best = minimize(6, kernel, SolverConfig())
        terminal = energy(trajectory.final, kernel)
        assert terminal <= best.energy + 1e-6

    def test_runs_below_one_with_floored_gradient(self):
        kernel = KernelParam(0.5)
        flow = FlowConfig(step_size=0.01, steps=500, record_every=100)
        trajectory = run_flow(4, kernel, flow)
        assert np.all(np.isfinite(trajectory.final.points))

    def test_rejects_single_point(self):
        with pytest.raises(ValueError):
            run_flow(1, KernelParam(1.0))
