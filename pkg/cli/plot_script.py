"""
Let's Do. | CanoPhase – Begleitende Plot-Skripte.

Erzeugt zu jeder Datendatei ein Skript, das die Abbildung zeichnet:
gnuplot für CSV, matplotlib für JSON. Das Paket selbst rendert keine
Bilder.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict

# gnuplot-Körper je Kommando; %(data)s ist der Dateiname der Daten
_GNUPLOT_BODY: Dict[str, str] = {
    "curve": """\
set logscale xy
set xlabel "N"
set ylabel "minimum detectable phase"
set key top right
plot "%(data)s" using 1:2 with lines lw 2 title "loss %(loss)s", \\
     "%(data)s" using 1:3 with lines dt 3 title "shot noise 1/sqrt(N)", \\
     "%(data)s" using 1:4 with lines dt 2 title "tan(pi/(N+2))"
""",
    "nopt": """\
set logscale xy
set xlabel "loss L"
set ylabel "N_opt"
plot "%(data)s" using 1:2 with linespoints pt 7 title "optimal number"
""",
    "dist": """\
set xlabel "phi"
set ylabel "P(phi)"
set xrange [0:2*pi]
plot "%(data)s" using 1:2 with lines lw 2 title "N=%(n)s, loss %(loss)s"
""",
}

_MATPLOTLIB_BODY: Dict[str, str] = {
    "curve": """\
n = [r["n"] for r in rows]
plt.loglog(n, [float(r["delta_phi"]) for r in rows], lw=2, label="loss %(loss)s")
plt.loglog(n, [r["shot_noise"] for r in rows], ":", label="shot noise 1/sqrt(N)")
plt.loglog(n, [r["heisenberg"] for r in rows], "--", label="tan(pi/(N+2))")
plt.xlabel("N")
plt.ylabel("minimum detectable phase")
""",
    "nopt": """\
pts = [(r["loss"], r["n_opt"]) for r in rows if r["n_opt"] != "none"]
plt.loglog([p[0] for p in pts], [p[1] for p in pts], "o-", label="optimal number")
plt.xlabel("loss L")
plt.ylabel("N_opt")
""",
    "dist": """\
plt.plot([r["phi"] for r in rows], [r["p"] for r in rows], lw=2,
         label="N=%(n)s, loss %(loss)s")
plt.xlabel("phi")
plt.ylabel("P(phi)")
""",
}


def script_path_for(data_path: Path, fmt: str) -> Path:
    """curve.csv -> curve.gp, curve.json -> curve_plot.py."""
    if fmt == "json":
        return data_path.with_name(data_path.stem + "_plot.py")
    return data_path.with_suffix(".gp")


def render_plot_script(command: str, data_path: Path, fmt: str, header: Dict) -> str:
    """
    Skripttext für ein Kommando.

    Args:
        command: 'curve', 'nopt' oder 'dist'
        data_path: Pfad der Datendatei (im Skript nur der Dateiname)
        fmt: 'csv' oder 'json'
        header: Laufkonfiguration für Beschriftungen

    Returns:
        Inhalt des Skripts
    """
    values = {
        "data": data_path.name,
        "loss": header.get("loss", ""),
        "n": header.get("n", ""),
    }
    if fmt == "json":
        return (
            "import json\n\n"
            "import matplotlib.pyplot as plt\n\n"
            f'with open("{data_path.name}", encoding="utf-8") as f:\n'
            '    rows = json.load(f)["rows"]\n\n'
            + _MATPLOTLIB_BODY[command] % values
            + "plt.legend()\n"
            "plt.show()\n"
        )
    return (
        'set datafile separator ","\n'
        "set datafile commentschars \"#\"\n"
        "set key autotitle columnhead\n"
        + _GNUPLOT_BODY[command] % values
        + "pause mouse close\n"
    )


def write_plot_script(command: str, data_path: Path, fmt: str, header: Dict) -> Path:
    target = script_path_for(data_path, fmt)
    with open(target, "w", encoding="utf-8", newline="") as f:
        f.write(render_plot_script(command, data_path, fmt, header))
    return target
