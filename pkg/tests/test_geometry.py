"""Architecture generation and persistence tests."""

import math

import numpy as np
import pytest
from scipy.stats import chi2

from spcsim.geometry import (
    Architecture,
    Scatterer,
    SchemaError,
    architecture_from_dict,
    architecture_to_dict,
    gen_ring,
    gen_uniform_cylinder,
    load_architecture,
    save_architecture,
)


class TestUniformCylinder:
    def test_radii_in_annulus(self):
        arch = gen_uniform_cylinder(1.0, 2.0, 500, seed=3)
        r = np.hypot(*arch.positions().T)
        assert np.all(r >= 1.0) and np.all(r <= 2.0)

    def test_ring_limit(self):
        arch = gen_uniform_cylinder(2.0 - 1e-12, 2.0, 200, seed=5)
        r = np.hypot(*arch.positions().T)
        assert np.allclose(r, 2.0, atol=1e-6)

    def test_seed_reproducible(self):
        a1 = gen_uniform_cylinder(0.5, 1.5, 100, seed=42)
        a2 = gen_uniform_cylinder(0.5, 1.5, 100, seed=42)
        assert np.array_equal(a1.positions(), a2.positions())
        a3 = gen_uniform_cylinder(0.5, 1.5, 100, seed=43)
        assert not np.array_equal(a1.positions(), a3.positions())

    def test_chi2_area_uniformity(self):
        # 10 equal-area annular bins, 1% significance
        a, b, n = 1.0, 3.0, 10_000
        arch = gen_uniform_cylinder(a, b, n, seed=7)
        r2 = np.sum(arch.positions() ** 2, axis=1)
        edges = np.linspace(a * a, b * b, 11)
        counts, _ = np.histogram(r2, bins=edges)
        expected = n / 10.0
        stat = np.sum((counts - expected) ** 2 / expected)
        assert stat < chi2.ppf(0.99, df=9)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            gen_uniform_cylinder(2.0, 1.0, 10, seed=0)
        with pytest.raises(ValueError):
            gen_uniform_cylinder(1.0, 2.0, 0, seed=0)


class TestRing:
    def test_single(self):
        arch = gen_ring(1.5, 1)
        assert arch.count == 1
        assert arch.scatterers[0].x == pytest.approx(1.5)
        assert arch.scatterers[0].y == pytest.approx(0.0)

    def test_angular_spacing(self):
        arch = gen_ring(2.0, 8)
        ang = np.sort(np.arctan2(*arch.positions().T[::-1]) % (2 * math.pi))
        gaps = np.diff(ang)
        assert np.allclose(gaps, 2 * math.pi / 8, atol=1e-12)

    @pytest.mark.parametrize("count", [2, 3, 7, 12])
    def test_centroid_origin(self, count):
        arch = gen_ring(1.0, count)
        assert np.max(np.abs(arch.positions().mean(axis=0))) < 1e-12


class TestValidation:
    def test_negative_gap(self):
        with pytest.raises(ValueError):
            Scatterer(0.0, 0.0, gaps=(-0.1,))

    def test_empty_architecture(self):
        with pytest.raises(ValueError):
            Architecture(())

    def test_interaction_gaps_scaled(self):
        arch = Architecture((Scatterer(0, 0, gaps=(0.25, 0.5)),), omega0=2.0)
        assert arch.interaction_gaps() == [1.0, 2.0]


class TestPersistence:
    def test_round_trip(self, tmp_path):
        arch = Architecture(
            (
                Scatterer(0.1, -0.2, (0.5,), 0.0),
                Scatterer(1.25, 0.0, (0.25, 0.75), 0.1),
                Scatterer(-0.7, 0.3, (0.5,), 0.0),
            ),
            omega0=2.5,
            g_coh=0.7,
            g_inc=1.3,
            label="trio",
        )
        path = tmp_path / "arch.json"
        save_architecture(arch, path)
        assert load_architecture(path) == arch

    def test_generated_round_trip(self, tmp_path):
        arch = gen_uniform_cylinder(0.4, 0.6, 50, seed=11)
        path = tmp_path / "cyl.json"
        save_architecture(arch, path)
        assert load_architecture(path) == arch

    def test_negative_gap_rejected(self):
        data = architecture_to_dict(gen_ring(1.0, 2))
        data["scatterers"][0]["gaps"] = [-0.5]
        with pytest.raises(SchemaError, match="gap"):
            architecture_from_dict(data)

    def test_empty_scatterers_rejected(self):
        data = architecture_to_dict(gen_ring(1.0, 2))
        data["scatterers"] = []
        with pytest.raises(SchemaError, match="non-empty"):
            architecture_from_dict(data)

    def test_unknown_key_rejected(self):
        data = architecture_to_dict(gen_ring(1.0, 2))
        data["bogus"] = 1
        with pytest.raises(SchemaError, match="unknown"):
            architecture_from_dict(data)

    def test_missing_key_rejected(self):
        data = architecture_to_dict(gen_ring(1.0, 2))
        del data["omega0"]
        with pytest.raises(SchemaError, match="omega0"):
            architecture_from_dict(data)

    def test_malformed_json_diagnostics(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"label": "x",\n  "omega0": ]\n}')
        with pytest.raises(SchemaError, match="line 2"):
            load_architecture(path)
