"""Reads the solver's VTK output with meshio and compares it to the CSV export."""

import csv
import subprocess
import sys
import tempfile
from pathlib import Path

import meshio
import numpy as np


def main() -> int:
    tool, mesh = sys.argv[1], sys.argv[2]
    with tempfile.TemporaryDirectory() as tmp:
        vtk = Path(tmp) / "u.vtk"
        table = Path(tmp) / "u.csv"
        subprocess.run([tool, "solve", "--mesh", mesh, "--problem", "default",
                        "--out-vtk", str(vtk), "--out-csv", str(table)], check=True)
        m = meshio.read(vtk)
        with open(table, newline="") as f:
            rows = list(csv.DictReader(f))

    u_csv = np.array([float(r["u"]) for r in rows])
    xy_csv = np.array([[float(r["x"]), float(r["y"])] for r in rows])
    u_vtk = np.asarray(m.point_data["u"]).ravel()

    ok = True
    if not np.array_equal(u_vtk, u_csv):
        print("point data differs from CSV")
        ok = False
    if not np.array_equal(m.points[:, :2], xy_csv):
        print("points differ from CSV")
        ok = False
    n_cells = sum(len(block.data) for block in m.cells)
    print(f"{len(u_vtk)} points, {n_cells} cells read by meshio")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
