"""Write one CSV per CLI command into an output directory.

    python scripts/run_sweeps.py --outdir results --overlap-steps 21
"""
import argparse
import pathlib
import sys

from nogolab import cli


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--outdir", default="results")
    p.add_argument("--overlap-steps", type=int, default=21)
    p.add_argument("--env-overlaps", default="0,0.5,1")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    status = 0
    for command in cli.COMMANDS[:-1]:
        envs = [float(x) for x in args.env_overlaps.split(",")] if command in ("clone-sweep", "entangle-clone") else [1.0]
        for e in envs:
            suffix = f"_e{e:g}" if len(envs) > 1 else ""
            path = outdir / f"{command}{suffix}.csv"
            cfg = cli.RunConfig(command, args.overlap_steps, e, 1.0, args.trials, args.seed,
                                output_path=str(path))
            code = cli.run(cfg)
            status = max(status, code)
            print(f"{path}: {'ok' if code == 0 else 'MISMATCH'}")
    return status


if __name__ == "__main__":
    sys.exit(main())
