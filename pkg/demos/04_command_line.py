"""
Batch reports from the command line
===================================

The ``phasecap`` command wraps the library for file-based batch work. Every
report is deterministic JSON; this script drives it in-process, exactly as
``phasecap <command> ...`` would from a shell.
"""

import io
import json
import tempfile
from pathlib import Path

import numpy as np

from phasecap import SampledWavefunction
from phasecap.cli import run, write_matrix, write_wavefunction


def phasecap(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    print(f"$ phasecap {' '.join(map(str, argv))}   (exit {code})")
    print(out.getvalue() or err.getvalue())
    return code


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    # %%
    # Matrices are JSON documents {"n": ..., "entries": [...row-major...]}.
    write_matrix(tmp / "sigma.json", 0.5 * np.eye(2))
    phasecap("admissible", tmp / "sigma.json")

    # %%
    # Wavefunctions are CSV files with columns x, re, im.
    psi = SampledWavefunction.from_function(lambda x: np.pi**-0.25 * np.exp(-(x**2) / 2), 256, 8.0)
    write_wavefunction(tmp / "psi.csv", psi)
    phasecap("hardy-fit", tmp / "psi.csv")

    # %%
    # Grids go to CSV with a JSON sidecar and can be fed back in.
    phasecap("wigner", tmp / "psi.csv", "--grid-out", tmp / "w.csv")
    phasecap("majorant", tmp / "w.csv")

    # %%
    # Invalid input exits with code 2 and a one-line JSON error on stderr.
    (tmp / "bad.json").write_text(json.dumps({"n": 1, "entries": [1, 0, 0, -1]}))
    phasecap("capacity", tmp / "bad.json")
