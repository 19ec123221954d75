"""End-to-end checks of the shadowpath command-line tool.

Usage: cli_test.py PATH_TO_SHADOWPATH
"""

import json
import pathlib
import subprocess
import sys
import tempfile
import unittest

EXE = None


def run(*args, cwd=None):
    return subprocess.run([EXE, *map(str, args)], capture_output=True, text=True, cwd=cwd)


class CliTest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = pathlib.Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def write(self, name, text):
        path = self.dir / name
        path.write_text(text)
        return path

    # gen

    def test_gen_sizes_and_determinism(self):
        boxes = self.dir / "boxes.txt"
        self.assertEqual(run("gen", "boxes", "--seed", 1, "--size", 50, "--out", boxes).returncode, 0)
        self.assertEqual(boxes.read_text().splitlines()[0].split()[:2], ["50", "50"])
        self.assertEqual(len(boxes.read_text().splitlines()), 51)

        hills = self.dir / "hills.txt"
        self.assertEqual(run("gen", "hills", "--seed", 2, "--size", 100, "--out", hills).returncode, 0)
        self.assertEqual(hills.read_text().splitlines()[0].split()[:2], ["100", "100"])

        again = self.dir / "again.txt"
        run("gen", "boxes", "--seed", 1, "--size", 50, "--out", again)
        self.assertEqual(boxes.read_bytes(), again.read_bytes())

    def test_gen_usage_errors(self):
        self.assertEqual(run("gen", "craters", "--out", self.dir / "x.txt").returncode, 2)
        self.assertEqual(run("gen", "boxes", "--size", 5, "--out", self.dir / "x.txt").returncode, 2)
        self.assertEqual(run("frobnicate").returncode, 2)
        self.assertEqual(run("--help").returncode, 0)

    def test_gen_io_failure(self):
        out = self.dir / "missing" / "dir" / "x.txt"
        proc = run("gen", "boxes", "--out", out)
        self.assertEqual(proc.returncode, 1)
        self.assertTrue(proc.stderr)

    # plan

    def test_plan_fixture_exact(self):
        proc = run("plan", "--map", "fixture:lemma1", "--alg", "exact", "--start", "F", "--goal", "H")
        self.assertEqual(proc.returncode, 0)
        rec = json.loads(proc.stdout)
        self.assertEqual(rec["obj_bin"], 12)
        self.assertEqual(rec["status"], "found")
        self.assertEqual(rec["path_names"][0], "F")
        self.assertEqual(rec["path_names"][-1], "H")
        for key in ("algorithm", "params", "start", "goal", "path", "obj_acc", "expanded", "duration_ms"):
            self.assertIn(key, rec)

    def test_plan_single_cell(self):
        proc = run("plan", "--map", "fixture:lemma1", "--alg", "binary", "--start", "D", "--goal", "D")
        self.assertEqual(proc.returncode, 0)
        self.assertEqual(len(json.loads(proc.stdout)["path"]), 1)

    def test_plan_parameter_errors(self):
        base = ("plan", "--map", "fixture:lemma1", "--start", "F", "--goal", "H")
        self.assertEqual(run(*base, "--alg", "saturation", "--tau", 0).returncode, 2)
        self.assertEqual(run(*base, "--alg", "dijkstra").returncode, 2)
        self.assertEqual(run(*base, "--alg", "saturation", "--p-success", 1.5).returncode, 2)
        self.assertEqual(run("plan", "--map", "fixture:lemma1", "--alg", "exact", "--start", "Z",
                             "--goal", "H").returncode, 2)

    def test_plan_no_path_and_budget(self):
        wall = self.write("wall.txt", "3 1 1\n0 9 0\n")
        proc = run("plan", "--map", wall, "--max-step", 1, "--alg", "shortest", "--start", "0,0", "--goal", "0,2")
        self.assertEqual(proc.returncode, 3)
        self.assertEqual(json.loads(proc.stdout)["status"], "no_path")
        proc = run("plan", "--map", "fixture:lemma1", "--alg", "exact", "--budget", 2, "--start", "F", "--goal", "H")
        self.assertEqual(proc.returncode, 4)

    def test_plan_grid_map_uses_field_cache(self):
        grid = self.dir / "g.txt"
        run("gen", "hills", "--seed", 3, "--size", 12, "--out", grid)
        first = run("plan", "--map", grid, "--alg", "binary", "--start", "0,0", "--goal", "11,11")
        self.assertEqual(first.returncode, 0)
        caches = list(self.dir.glob("g.txt.*.expf"))
        self.assertEqual(len(caches), 1)
        second = run("plan", "--map", grid, "--alg", "binary", "--start", "0,0", "--goal", "11,11")
        self.assertEqual(json.loads(first.stdout)["path"], json.loads(second.stdout)["path"])
        cold = run("plan", "--map", grid, "--no-cache", "--alg", "binary", "--start", "0,0", "--goal", "11,11")
        self.assertEqual(json.loads(first.stdout)["path"], json.loads(cold.stdout)["path"])

    # field

    def test_field_export_round_trip(self):
        grid = self.dir / "g.txt"
        run("gen", "boxes", "--seed", 2, "--size", 12, "--out", grid)
        out = self.dir / "g.expf"
        self.assertEqual(run("field", "--map", grid, "--out", out, "--no-cache").returncode, 0)
        data = out.read_bytes()
        self.assertEqual(data[:4], b"EXPF")
        self.assertEqual(int.from_bytes(data[4:8], "little"), 144)
        self.assertEqual(len(data), 8 + 144 * 18)
        proc = run("plan", "--map", grid, "--field", out, "--alg", "exact", "--start", "0,0", "--goal", "0,5")
        self.assertEqual(proc.returncode, 0)

    # corridor

    def test_corridor_flat_map_covers_everything(self):
        flat = self.write("flat.txt", "2 2 1\n0 0\n0 0\n")
        proc = run("corridor", "--map", flat, "--path", "0,0;0,1;1,1;1,0")
        self.assertEqual(proc.returncode, 0)
        rec = json.loads(proc.stdout)
        self.assertEqual(rec["C_size"], 4)
        self.assertEqual(rec["avg_width"], 1.0)

    def test_corridor_fixture(self):
        out = self.dir / "corridor.json"
        proc = run("corridor", "--map", "fixture:lemma1", "--path", "F,C,B,A,D,E", "--out", out)
        self.assertEqual(proc.returncode, 0)
        rec = json.loads(proc.stdout)
        self.assertEqual(rec["K_size"], 9)
        self.assertEqual(sorted(rec["K_names"]), list("ABCDEFHIJ"))
        self.assertAlmostEqual(rec["avg_width"], rec["C_size"] / 6)
        self.assertEqual(json.loads(out.read_text()), rec)

    def test_corridor_invalid_path(self):
        proc = run("corridor", "--map", "fixture:lemma1", "--path", "F,J,I,E,L")
        self.assertEqual(proc.returncode, 2)
        self.assertIn("E", proc.stderr)
        self.assertIn("L", proc.stderr)
        self.assertEqual(proc.stdout, "")

    def test_corridor_path_file_and_render(self):
        grid = self.dir / "g.txt"
        run("gen", "hills", "--seed", 1, "--size", 10, "--out", grid)
        path_file = self.write("p.txt", "0,0;0,1;0,2\n")
        img = self.dir / "c.pgm"
        proc = run("corridor", "--map", grid, "--path-file", path_file, "--render", img, "--reachable")
        self.assertEqual(proc.returncode, 0)
        self.assertTrue(img.read_bytes().startswith(b"P5\n10 10\n255\n"))

    # render

    def test_render_flat_and_single_cell(self):
        flat = self.write("flat.txt", "3 2 1\n1 1 1\n1 1 1\n")
        img = self.dir / "flat.pgm"
        self.assertEqual(run("render", "--map", flat, "--out", img).returncode, 0)
        data = img.read_bytes()
        header = b"P5\n3 2\n255\n"
        self.assertEqual(data[: len(header)], header)
        self.assertEqual(data[len(header):], bytes(6))

        one = self.write("one.txt", "1 1 1\n4\n")
        img1 = self.dir / "one.pgm"
        self.assertEqual(run("render", "--map", one, "--out", img1).returncode, 0)
        self.assertEqual(img1.read_bytes(), b"P5\n1 1\n255\n\x00")

    def test_render_deterministic_with_overlays(self):
        grid = self.dir / "g.txt"
        run("gen", "boxes", "--seed", 5, "--size", 16, "--out", grid)
        a, b = self.dir / "a.pgm", self.dir / "b.pgm"
        args = ("render", "--map", grid, "--path", "0,0;0,1;0,2;1,2", "--corridor")
        self.assertEqual(run(*args, "--out", a).returncode, 0)
        self.assertEqual(run(*args, "--out", b).returncode, 0)
        self.assertEqual(a.read_bytes(), b.read_bytes())
        pixels = a.read_bytes()[len(b"P5\n16 16\n255\n"):]
        self.assertEqual(pixels[0], 0)
        self.assertEqual(pixels[16 + 2], 0)

    def test_render_dimension_mismatch(self):
        grid = self.write("g.txt", "2 2 1\n0 0\n0 0\n")
        other = self.write("h.txt", "3 1 1\n0 0 0\n")
        cache = self.dir / "h.expf"
        run("field", "--map", other, "--out", cache, "--no-cache")
        proc = run("render", "--map", grid, "--field", cache, "--out", self.dir / "x.pgm")
        self.assertNotEqual(proc.returncode, 0)
        self.assertTrue(proc.stderr)

    # experiment

    def test_experiment_zero_queries(self):
        cfg = self.write("zero.cfg", "maps = boxes\nsizes = 10\nqueries = 0\n")
        out = self.dir / "out"
        proc = run("experiment", "--config", cfg, "--out-dir", out)
        self.assertEqual(proc.returncode, 0)
        self.assertEqual(proc.stdout, "")
        lines = (out / "records.jsonl").read_text().splitlines()
        self.assertEqual(len(lines), 1)
        self.assertEqual(json.loads(lines[0])["format"], "shadowpath.experiment")
        self.assertEqual(len((out / "summary.csv").read_text().splitlines()), 1)

    def test_experiment_records_and_determinism(self):
        cfg = self.write("small.cfg", "\n".join([
            "maps = boxes, hills", "sizes = 10", "seeds = 1", "queries = 2",
            "algorithms = shortest, saturation, exact", "taus = 1, 2, 3", "timing = false", "",
        ]))
        outs = []
        for name in ("a", "b"):
            out = self.dir / name
            self.assertEqual(run("experiment", "--config", cfg, "--out-dir", out).returncode, 0)
            rows = [json.loads(line) for line in (out / "records.jsonl").read_text().splitlines()]
            for row in rows:
                row.pop("duration_ms", None)
                row.pop("runtime_ratio", None)
            outs.append(rows)
        self.assertEqual(outs[0], outs[1])
        records = outs[0][1:]
        self.assertEqual(len(records), 2 * 2 * 5)

    def test_experiment_config_errors(self):
        bad = self.write("bad.cfg", "queries = many\n")
        proc = run("experiment", "--config", bad, "--out-dir", self.dir / "o")
        self.assertEqual(proc.returncode, 2)
        self.assertIn("queries", proc.stderr)
        unknown = self.write("unknown.cfg", "colour = blue\n")
        proc = run("experiment", "--config", unknown, "--out-dir", self.dir / "o")
        self.assertEqual(proc.returncode, 2)
        self.assertIn("colour", proc.stderr)


if __name__ == "__main__":
    EXE = sys.argv.pop(1)
    unittest.main()
