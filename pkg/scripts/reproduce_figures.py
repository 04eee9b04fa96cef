"""Write the temperature sweeps, field sweeps and T-B grids as CSV files.

    python scripts/reproduce_figures.py --out results/
"""
import argparse
from pathlib import Path

from nidimer.cli import records_to_csv
from nidimer.model import MU_B_OVER_KB, ModelParams
from nidimer.sweep import SweepConfig, density_grid, sweep_field, sweep_temperature


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--physical-units", action="store_true",
                    help=f"use mu_B/k_B = {MU_B_OVER_KB} K/T for the Zeeman energies")
    args = ap.parse_args()

    params = ModelParams(field_unit=MU_B_OVER_KB if args.physical_units else 1.0)
    args.out.mkdir(parents=True, exist_ok=True)
    jobs = {
        "temperature_sweep.csv": lambda: sweep_temperature(
            params, [0.0, 45.0, 90.0, 150.0], SweepConfig(t_min=1.0, t_max=600.0, t_steps=600)),
        "field_sweep.csv": lambda: sweep_field(
            params, [5.0, 10.0, 100.0, 200.0, 300.0], SweepConfig(b_min=0.0, b_max=450.0, b_steps=901)),
        "density_grid.csv": lambda: density_grid(
            params, SweepConfig(t_min=1.0, t_max=600.0, t_steps=120, b_min=0.0, b_max=450.0, b_steps=91)),
    }
    for name, job in jobs.items():
        records = job()
        (args.out / name).write_text(records_to_csv(records), encoding="utf-8")
        print(f"{name}: {len(records)} records")


if __name__ == "__main__":
    main()
