import argparse
import sys

from Common.IllusionException import CIllusionException, ErrCode
from Runner.Rebuild import verify_files
from Runner.Scenario import run_scenario, run_sweep

EXIT_PASS = 0
EXIT_VERIFY_FAILED = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="illusion", description="multi-robot illusion runner")
    sub = parser.add_subparsers(dest="cmd", required=True)

    for name, help_text in (("run", "run one scenario config"), ("sweep", "run a disks or caravan grid on a worker pool")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")

    p = sub.add_parser("verify", help="re-check a witness against recorded traces")
    p.add_argument("witness")
    p.add_argument("traces")
    p.add_argument("--eps", type=float, default=None, help="override the recorded tolerance")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "verify":
            report = verify_files(args.witness, args.traces, args.eps)
            if not report.passed:
                raise CIllusionException("witness does not ratify the recorded traces", ErrCode.VERIFICATION_FAILED, step_idx=report.first_fail_step)
            print(f"[INFO] pass: horizon={report.horizon} slowdown={report.measured_slowdown} max_residual={report.max_residual:.3g}")
            return EXIT_PASS
        if args.jobs < 1:
            raise CIllusionException(f"--jobs must be >= 1, got {args.jobs}", ErrCode.CONFIG_ERROR)
        runner = run_scenario if args.cmd == "run" else run_sweep
        art = runner(args.config, out=args.out, seed=args.seed, jobs=args.jobs)
        print(f"[INFO] pass: artifacts in {art.out_dir}")
        return EXIT_PASS
    except CIllusionException as e:
        print(f"[ERROR-{e.errcode.name}] {e}", file=sys.stderr)
        return EXIT_VERIFY_FAILED if e.is_verify_err() else EXIT_ERROR
    except Exception as e:  # anything else is a runtime error for the exit-code contract
        print(f"[ERROR] {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
