import math
from pathlib import Path

import pytest

from lib.parsing import load_config
from models.surd import ParameterError, SurdScalar
from models.torus_element import TorusElement
from services.experiment_service import ExperimentService, evaluation

EXPERIMENTS = Path(__file__).resolve().parents[1] / "config" / "experiments"


def config(name):
    return load_config(str(EXPERIMENTS / name))


class TestExperimentService:
    """Convergence tables built from the shipped experiment files."""

    def setup_method(self):
        self.service = ExperimentService()

    def test_evaluation_sums_coefficients(self):
        """ev(2u - 3v + 1j) = -1 + 1j."""
        a = TorusElement.from_terms(0, {(1, 0): 2, (0, 1): -3, (0, 0): 1j})
        assert evaluation(a) == -1 + 1j

    def test_unique_ergodic_average(self):
        """The irrational R^2 flow averages u + 2 v^-1 + 1 to its unit part."""
        rows = self.service.table("average", config("default.ini"))
        assert [int(row.size) for row in rows] == [10, 100, 1000]
        for row in rows:
            assert row.limit == 1
            assert row.abs_error <= 2 / (math.pi * math.sqrt(2) * float(row.size)) + 1e-12

    def test_relative_average_keeps_v_powers(self):
        """Under alpha_s = tau_(s,0) the limit is ev(3 v^2) = 3."""
        rows = self.service.average_table(config("torus_relative_average.ini"))
        assert len(rows) == 4
        for row in rows:
            assert row.limit == 3
            assert row.abs_error <= 1 / (2 * math.pi * float(row.size)) + 1e-12

    def test_coupling_table_decays_to_product_trace(self):
        """kappa_D on v (x) z^-1 averages to 0 at rate 1/((sqrt3 - 1) pi T)."""
        rows = self.service.table("disjoint", config("coupling_irrational_box.ini"))
        assert [int(row.size) for row in rows] == [1, 10, 100, 1000]
        for row in rows:
            assert row.limit == 0
            assert row.abs_error <= 1 / ((math.sqrt(3) - 1) * math.pi * float(row.size)) + 1e-12

    def test_mirror_table_converges_to_omega_rel(self):
        """kappa_diag averages to omega_rel, which is 1 on v (x) z^-1 and 0 on u (x) w^-1."""
        rows = self.service.disjoint_table(config("mirror_relative.ini"))
        for row in rows:
            assert row.limit == 1
            assert row.abs_error <= 1 / (math.pi * (math.sqrt(2) - 1) * float(row.size)) + 1e-12

    @pytest.mark.parametrize(
        "name,limit",
        [("dual_s_letters.ini", 1), ("dual_t_letters.ini", 0), ("dual_mixed.ini", 0)],
    )
    def test_group_tables_are_exact(self, name, limit):
        """Correlation averages equal mu(D(a) D(b)) at every N."""
        rows = self.service.table("group", config(name))
        assert [int(row.size) for row in rows] == [1, 10, 100]
        assert all(row.limit == limit and row.abs_error == 0 for row in rows)

    def test_subcommand_must_match_system(self):
        """Tables reject systems of the wrong kind."""
        with pytest.raises(ParameterError):
            self.service.average_table(config("dual_s_letters.ini"))
        with pytest.raises(ParameterError):
            self.service.disjoint_table(config("default.ini"))
        with pytest.raises(ParameterError):
            self.service.group_table(config("default.ini"))
        with pytest.raises(ParameterError):
            self.service.table("oracle", config("default.ini"))

    def test_missing_folner_section(self, tmp_path):
        """A table needs region sizes."""
        path = tmp_path / "bare.ini"
        path.write_text("[system]\nkind = qtorus\ntheta1 = 1/5\n[observable]\nelement = u\n", encoding="utf-8")
        with pytest.raises(ParameterError):
            self.service.average_table(load_config(str(path)))

    def test_one_radicand_per_frequency_axis(self, tmp_path):
        """p = sqrt(3) and c = sqrt(2) meet in p*j + c*l, which no single field holds."""
        text = (EXPERIMENTS / "mirror_relative.ini").read_text(encoding="utf-8")
        path = tmp_path / "mixed.ini"
        path.write_text(text.replace("p = 1\n", "p = sqrt(3)\n"), encoding="utf-8")
        with pytest.raises(ParameterError, match=r"Cannot combine sqrt\(\d\) and sqrt\(\d\)"):
            self.service.disjoint_table(load_config(str(path)))

    def test_radicands_may_differ_across_axes(self):
        """c = sqrt(2) and d = sqrt(3) never meet, so the box coupling builds."""
        cfg = config("coupling_irrational_box.ini")
        assert (cfg.system.c, cfg.system.d) == (SurdScalar.sqrt(2), SurdScalar.sqrt(3))
        assert len(self.service.disjoint_table(cfg)) == 4
