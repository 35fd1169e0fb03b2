# tests/cli_test/test_cli.py

import json
import os
import tempfile
import unittest
from unittest import mock

from click.testing import CliRunner

from pcli_lab.bounds import InconclusiveError
from pcli_lab.cli.clic import cli, cli_main
from pcli_lab.harness.report import ExperimentReport, ReportRow

RUN_EXPERIMENTS = "pcli_lab.cli._cli_utils.run_experiments"


def _report(passed=True):
    measured = 1.0 if passed else 0.0
    row = ReportRow.at_least("demo", "check", 4.0, 2, measured, 0.5)
    return ExperimentReport(rows=[row])


class TestRunCommands(unittest.TestCase):
    def setUp(self):
        self.runner = CliRunner()

    @mock.patch(RUN_EXPERIMENTS)
    def test_run_success_prints_csv(self, mock_run):
        mock_run.return_value = _report()

        result = self.runner.invoke(cli, ["run", "--kappa", "50"])

        self.assertEqual(result.exit_code, 0)
        self.assertIn("experiment,label,kappa,k", result.output)
        self.assertIn("demo,check,4.0,2,1.0,0.5,0.5,True", result.output)
        self.assertIn("[✅] All 1 checks passed", result.output)
        cfg = mock_run.call_args[0][0]
        self.assertEqual(cfg.kappa_list, [50.0])
        self.assertIsNone(mock_run.call_args[0][1])

    @mock.patch(RUN_EXPERIMENTS)
    def test_stdout_is_pure_csv(self, mock_run):
        mock_run.return_value = _report()

        result = self.runner.invoke(cli, ["verify-lb-smooth", "--k", "1"])

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(
            result.stdout.splitlines(),
            [
                "experiment,label,kappa,k,measured,bound,margin,pass",
                "demo,check,4.0,2,1.0,0.5,0.5,True",
            ],
        )
        self.assertIn("[ℹ] Running verify-lb-smooth...", result.stderr)
        self.assertIn("[✅] All 1 checks passed", result.stderr)

    @mock.patch(RUN_EXPERIMENTS)
    def test_failure_lines_go_to_stderr(self, mock_run):
        mock_run.return_value = _report(passed=False)

        result = self.runner.invoke(cli, ["verify-lb-sc"])

        self.assertEqual(result.exit_code, 1)
        self.assertNotIn("[❌ ERROR]", result.stdout)
        self.assertIn("[❌ ERROR] demo check", result.stderr)

    @mock.patch(RUN_EXPERIMENTS)
    def test_failed_check_exits_one(self, mock_run):
        mock_run.return_value = _report(passed=False)

        result = self.runner.invoke(cli, ["verify-lb-sc"])

        self.assertEqual(result.exit_code, 1)
        self.assertIn("[❌ ERROR] demo check kappa=4.0 k=2", result.output)
        self.assertEqual(mock_run.call_args[0][1], ["verify-lb-sc"])

    @mock.patch(RUN_EXPERIMENTS)
    def test_inconclusive_exits_one(self, mock_run):
        mock_run.side_effect = InconclusiveError("no witness")

        result = self.runner.invoke(cli, ["lemma-b3"])

        self.assertEqual(result.exit_code, 1)
        self.assertIn("[❌ ERROR] no witness", result.output)

    @mock.patch(RUN_EXPERIMENTS)
    def test_restart_demo_runs_restart(self, mock_run):
        mock_run.return_value = _report()

        result = self.runner.invoke(
            cli, ["restart-demo", "--seed", "7", "--eps", "1e-4"]
        )

        self.assertEqual(result.exit_code, 0)
        cfg, names = mock_run.call_args[0]
        self.assertEqual(names, ["restart"])
        self.assertEqual(cfg.seed, 7)
        self.assertEqual(cfg.eps, 1e-4)

    @mock.patch(RUN_EXPERIMENTS)
    def test_out_writes_report(self, mock_run):
        mock_run.return_value = _report()

        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "report.csv")
            result = self.runner.invoke(cli, ["stochastic", "--out", path])
            self.assertTrue(os.path.exists(path))
            with open(path) as f:
                self.assertTrue(f.read().startswith("experiment,label"))

        self.assertEqual(result.exit_code, 0)
        self.assertIn("[ℹ] Report written to", result.output)
        self.assertNotIn("experiment,label", result.output)

    @mock.patch(RUN_EXPERIMENTS)
    def test_config_file_is_used(self, mock_run):
        mock_run.return_value = _report()

        with tempfile.NamedTemporaryFile("w+", suffix=".json") as f:
            json.dump({"k_list": [3, 4], "n_grid": 50}, f)
            f.flush()
            result = self.runner.invoke(
                cli, ["rate-fit", "--config", f.name, "--k", "9"]
            )

        self.assertEqual(result.exit_code, 0)
        cfg = mock_run.call_args[0][0]
        self.assertEqual(cfg.k_list, [9])
        self.assertEqual(cfg.n_grid, 50)


class TestConfigErrors(unittest.TestCase):
    def setUp(self):
        self.runner = CliRunner()

    @mock.patch(RUN_EXPERIMENTS)
    def test_bad_kappa_exits_two(self, mock_run):
        result = self.runner.invoke(cli, ["verify-lb-smooth", "--kappa", "1"])

        self.assertEqual(result.exit_code, 2)
        self.assertIn("[❌ ERROR]", result.output)
        mock_run.assert_not_called()

    def test_missing_config_exits_two(self):
        result = self.runner.invoke(
            cli, ["run", "--config", "/nonexistent/pcli.json"]
        )

        self.assertEqual(result.exit_code, 2)
        self.assertIn("not found", result.output)

    def test_unknown_experiment_exits_two(self):
        result = self.runner.invoke(cli, ["run", "--experiment", "bogus"])

        self.assertEqual(result.exit_code, 2)


class TestPolybound(unittest.TestCase):
    def setUp(self):
        self.runner = CliRunner()

    def test_polybound_output(self):
        result = self.runner.invoke(
            cli, ["polybound", "--kappa", "4", "--k", "2"]
        )

        self.assertEqual(result.exit_code, 0)
        self.assertIn(
            "k=2 kappa=4: lower bound 1.111111e-01, "
            "chebyshev optimum 2.195122e-01",
            result.output,
        )

    def test_polybound_uses_every_pair(self):
        result = self.runner.invoke(
            cli, ["polybound", "--kappa", "4", "--kappa", "9", "--k", "1"]
        )

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(len(result.output.strip().splitlines()), 2)


class TestCliMain(unittest.TestCase):
    def test_exit_codes(self):
        self.assertEqual(cli_main(["polybound", "--kappa", "4", "--k", "1"]), 0)
        self.assertEqual(cli_main(["polybound", "--kappa", "0.5"]), 2)
        self.assertEqual(cli_main(["run", "--experiment", "bogus"]), 2)

    @mock.patch(RUN_EXPERIMENTS)
    def test_failures_return_one(self, mock_run):
        mock_run.return_value = _report(passed=False)
        self.assertEqual(cli_main(["verify-lb-sc"]), 1)


if __name__ == "__main__":
    unittest.main()
