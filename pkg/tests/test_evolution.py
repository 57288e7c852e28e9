"""Evolution loop: initialization, mutation, novelty scoring, selection."""

import math

import numpy as np
import pytest

from spiralns import (
    EvolutionConfig,
    Genotype,
    GenotypeSpace,
    Metric,
    SamplingMode,
    SamplingStrategy,
    SpiralParams,
    UnstructuredArchive,
    init_population,
    map_genotype,
    mutate,
    novelty_score,
    spiral_point,
    step_generation,
)
from spiralns.evolution import Individual, _pool_novelty

PARAMS = SpiralParams()
POP_ONLY = SamplingStrategy(SamplingMode.POPULATION_ONLY)


def make_individual(t: float, ident: int = 0) -> Individual:
    from spiralns.spiral import arc_length_from_origin

    b = spiral_point(t, PARAMS)
    return Individual(
        id=ident,
        genotype=Genotype(t, GenotypeSpace.ANGLE),
        behavior=b,
        arc_pos=arc_length_from_origin(t, PARAMS),
    )


class TestInitPopulation:
    def test_all_identical_at_start(self):
        cfg = EvolutionConfig(pop_size=30, init_t0=15 * math.pi)
        state = init_population(cfg, PARAMS)
        assert len(state.population) == 30
        ref = spiral_point(15 * math.pi, PARAMS)
        for ind in state.population:
            assert (ind.behavior.x, ind.behavior.y) == (ref.x, ref.y)
            assert ind.novelty == 0.0 and ind.eta == 0.0
            assert ind.parent_id is None and ind.birth_generation == 0
        assert state.archive is None and state.generation == 0

    def test_single_individual(self):
        cfg = EvolutionConfig(pop_size=1)
        state = init_population(cfg, PARAMS)
        assert len(state.population) == 1

    def test_origin_start(self):
        cfg = EvolutionConfig(init_t0=0.0)
        state = init_population(cfg, PARAMS)
        assert state.population[0].behavior.x == 0.0

    def test_arc_space_start_matches_angle_space_start(self):
        t0 = 28 * math.pi
        a = init_population(
            EvolutionConfig(init_t0=t0, genotype_space=GenotypeSpace.ANGLE), PARAMS
        )
        u = init_population(
            EvolutionConfig(init_t0=t0, genotype_space=GenotypeSpace.ARC_LENGTH), PARAMS
        )
        assert a.population[0].behavior.x == pytest.approx(
            u.population[0].behavior.x, abs=1e-6
        )

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            init_population(EvolutionConfig(pop_size=0), PARAMS)
        with pytest.raises(ValueError):
            init_population(EvolutionConfig(sigma=-0.1), PARAMS)
        with pytest.raises(ValueError):
            init_population(EvolutionConfig(init_t0=1e6), PARAMS)


class TestMutate:
    def test_tiny_sigma_is_identity_in_the_limit(self):
        rng = np.random.default_rng(0)
        g = Genotype(10.0, GenotypeSpace.ANGLE)
        out = mutate(g, 1e-12, rng, PARAMS)
        assert out.value == pytest.approx(10.0, abs=1e-9)
        assert out.space is GenotypeSpace.ANGLE

    def test_interior_sample_statistics(self):
        rng = np.random.default_rng(1)
        sigma = 0.3
        g = Genotype(15 * math.pi, GenotypeSpace.ANGLE)  # far from both bounds
        deltas = np.array(
            [mutate(g, sigma, rng, PARAMS).value - g.value for _ in range(100_000)]
        )
        assert abs(deltas.mean()) <= 3 * sigma / math.sqrt(len(deltas))
        assert deltas.std() == pytest.approx(sigma, rel=0.02)

    def test_clamps_at_bounds(self):
        rng = np.random.default_rng(2)
        g = Genotype(0.0, GenotypeSpace.ANGLE)
        values = [mutate(g, 0.3, rng, PARAMS).value for _ in range(200)]
        assert min(values) == 0.0  # roughly half the draws clamp to the bound
        assert all(v >= 0.0 for v in values)

    def test_rejects_bad_sigma(self):
        rng = np.random.default_rng(3)
        with pytest.raises(ValueError):
            mutate(Genotype(1.0, GenotypeSpace.ANGLE), 0.0, rng, PARAMS)


def brute_force_novelty(subject, others, k, metric):
    """Full-sort oracle: all distances, ascending, mean of the first k."""
    dists = []
    for other in others:
        if other is subject:
            continue
        if metric is Metric.GEODESIC:
            d = abs(subject.arc_pos - other.arc_pos)
        else:
            dx = subject.behavior.x - other.behavior.x
            dy = subject.behavior.y - other.behavior.y
            d = math.sqrt(dx * dx + dy * dy)
        dists.append(d)
    dists.sort()
    if not dists:
        return 0.0
    k = min(k, len(dists))
    return sum(dists[:k]) / k


class TestNoveltyScore:
    def test_coincident_pair_scores_zero(self):
        a, b = make_individual(5.0, 0), make_individual(5.0, 1)
        assert novelty_score(a, [a, b], [], 1, Metric.EUCLIDEAN) == 0.0

    def test_three_point_hand_configuration(self):
        subject = make_individual(0.0, 0)
        near = make_individual(math.pi / 2, 1)
        far = make_individual(math.pi, 2)
        # distances from the origin are just the radii a*t
        expected = (0.01 * math.pi / 2 + 0.01 * math.pi) / 2
        got = novelty_score(subject, [subject, near, far], [], 2, Metric.EUCLIDEAN)
        assert got == pytest.approx(expected, rel=1e-12)

    def test_matches_brute_force_oracle_exactly(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            n = int(rng.integers(2, 51))
            k = int(rng.integers(1, 15))
            metric = Metric.EUCLIDEAN if rng.random() < 0.5 else Metric.GEODESIC
            pop = [
                make_individual(float(t), i)
                for i, t in enumerate(rng.uniform(0, PARAMS.t_max, n))
            ]
            n_arch = int(rng.integers(0, 10))
            arch = [
                make_individual(float(t), 1000 + i)
                for i, t in enumerate(rng.uniform(0, PARAMS.t_max, n_arch))
            ]
            subject = pop[int(rng.integers(n))]
            got = novelty_score(subject, pop, arch, k, metric)
            want = brute_force_novelty(subject, pop + arch, k, metric)
            assert got == want  # exact, not approximate

    def test_vectorized_pool_matches_single_subject_scoring(self):
        rng = np.random.default_rng(12)
        for metric in Metric:
            pool = [
                make_individual(float(t), i)
                for i, t in enumerate(rng.uniform(0, PARAMS.t_max, 40))
            ]
            arch = [
                make_individual(float(t), 100 + i)
                for i, t in enumerate(rng.uniform(0, PARAMS.t_max, 15))
            ]
            scores = _pool_novelty(pool, arch, 10, metric)
            for ind, score in zip(pool, scores):
                assert float(score) == novelty_score(ind, pool, arch, 10, metric)

    def test_no_candidates_scores_zero(self):
        a = make_individual(3.0, 0)
        assert novelty_score(a, [a], [], 5, Metric.GEODESIC) == 0.0

    def test_fewer_than_k_candidates_averages_all(self):
        a, b = make_individual(1.0, 0), make_individual(2.0, 1)
        want = abs(a.arc_pos - b.arc_pos)
        assert novelty_score(a, [a, b], [], 10, Metric.GEODESIC) == want


class TestStepGeneration:
    def test_structural_postconditions(self):
        cfg = EvolutionConfig(pop_size=30, offspring_size=30, g_max=5, seed=4)
        state = init_population(cfg, PARAMS)
        for g in range(1, 4):
            step_generation(state, cfg, POP_ONLY)
            assert state.generation == g
            assert len(state.population) == 30
            assert len(state.lineage_log) == 30 * g

    def test_selection_soundness(self):
        cfg = EvolutionConfig(seed=5)
        state = init_population(cfg, PARAMS)
        for _ in range(3):
            pre = list(state.population)
            before = len(state.lineage_log)
            step_generation(state, cfg, POP_ONLY)
            new_ids = {e.child_id for e in state.lineage_log[before:]}
            pool = pre + [i for i in state.population if i.id in new_ids]
            survivors = {i.id for i in state.population}
            discarded_scores = [i.novelty for i in pool if i.id not in survivors]
            if discarded_scores:
                worst_survivor = min(i.novelty for i in state.population)
                assert worst_survivor >= max(discarded_scores) or math.isclose(
                    worst_survivor, max(discarded_scores)
                )

    def test_behavior_consistency(self):
        cfg = EvolutionConfig(seed=6, genotype_space=GenotypeSpace.ARC_LENGTH)
        state = init_population(cfg, PARAMS)
        for _ in range(5):
            step_generation(state, cfg, POP_ONLY)
        for ind in state.population:
            ref = map_genotype(ind.genotype, PARAMS)
            assert ind.behavior.x == pytest.approx(ref.x, abs=1e-9)
            assert ind.behavior.y == pytest.approx(ref.y, abs=1e-9)

    def test_coincident_tie_goes_to_the_child(self):
        cfg = EvolutionConfig(pop_size=1, offspring_size=1, sigma=1e-300, seed=7)
        state = init_population(cfg, PARAMS)
        parent_id = state.population[0].id
        step_generation(state, cfg, POP_ONLY)
        survivor = state.population[0]
        assert survivor.birth_generation == 1
        assert survivor.id != parent_id

    def test_determinism(self):
        def run():
            cfg = EvolutionConfig(seed=8)
            state = init_population(cfg, PARAMS)
            for _ in range(10):
                step_generation(state, cfg, POP_ONLY)
            return (
                [tuple(e) for e in state.lineage_log],
                [(i.id, i.genotype.value, i.novelty) for i in state.population],
            )

        assert run() == run()

    def test_novelty_non_negative(self):
        cfg = EvolutionConfig(seed=9)
        state = init_population(cfg, PARAMS)
        for _ in range(5):
            step_generation(state, cfg, POP_ONLY)
            assert all(i.novelty >= 0.0 for i in state.population)

    def test_birth_delta_tracks_arc_change(self):
        cfg = EvolutionConfig(seed=10)
        state = init_population(cfg, PARAMS)
        step_generation(state, cfg, POP_ONLY)
        by_id = {i.id: i for i in state.population}
        for e in state.lineage_log:
            child = by_id.get(e.child_id)
            if child is None:
                continue
            from spiralns.spiral import arc_length_from_origin

            want = arc_length_from_origin(e.child_t, PARAMS) - arc_length_from_origin(
                e.parent_t, PARAMS
            )
            assert child.birth_delta == pytest.approx(want, abs=1e-12)

    def test_archive_members_join_novelty_candidates(self):
        # a far-away archived point lifts the novelty of everything
        cfg = EvolutionConfig(pop_size=3, offspring_size=3, k=10, seed=11)
        state = init_population(cfg, PARAMS)
        archive = UnstructuredArchive(max_size=None, additions_per_generation=1)
        archive.members.append(make_individual(0.0, 999))
        state.archive = archive
        step_generation(state, cfg, POP_ONLY)
        with_archive = max(i.novelty for i in state.population)

        state2 = init_population(EvolutionConfig(pop_size=3, offspring_size=3, k=10, seed=11), PARAMS)
        step_generation(state2, EvolutionConfig(pop_size=3, offspring_size=3, k=10, seed=11), POP_ONLY)
        without = max(i.novelty for i in state2.population)
        assert with_archive > without

    def test_guided_requires_grid_archive(self):
        cfg = EvolutionConfig(seed=12)
        state = init_population(cfg, PARAMS)
        guided = SamplingStrategy(SamplingMode.MIXED_GUIDED)
        with pytest.raises(ValueError):
            step_generation(state, cfg, guided)
