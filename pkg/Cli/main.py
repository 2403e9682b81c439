import logging
import sys

from Cli import commands
from Cli.arguments import parse
from Errors import exit_code_for
from Files import File
from Manifest import RunManifest

logger = logging.getLogger(__name__)


def _setup_logging(verbose: bool, log_file: str) -> None:
    level = logging.DEBUG if verbose else logging.WARNING
    handler_args = {"filename": log_file} if log_file else {"stream": sys.stderr}
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s', force=True,
                        **handler_args)


class Writer:
    """Single writer for every artifact of a run; each file lands atomically."""

    def __init__(self) -> None:
        self.written: list[str] = []

    def write(self, path: str, payload: bytes) -> None:
        File(path).write_atomic(payload)
        self.written.append(path)
        logger.info("Wrote %s (%d bytes)", path, len(payload))


def run_command(argv: list[str]) -> int:
    try:
        args = parse(argv)
    except SystemExit as exit_:
        # argparse already printed its usage message
        return int(exit_.code or 0)
    except Exception as error:
        print(f"singular-lattice: {error}", file=sys.stderr)
        return exit_code_for(error)

    _setup_logging(args.verbose, args.log_file)
    solver = {"tol": args.tol, "seed": args.seed, "max_iterations": args.max_iterations,
              "basis_cap": args.basis_cap, "threads": args.threads, "cache_dir": args.cache_dir}
    try:
        ctx = commands.Context(args)
        result = commands.config(args.command)(ctx)
        manifest = RunManifest(args.command, result.parameters, solver)
        writer = Writer()
        for path, payload in result.outputs:
            writer.write(path, payload)
        manifest.outputs = list(writer.written)
        if ctx.cache is not None:
            ctx.cache.flush(writer.write)
        manifest_path = commands.Context.companion(result.outputs[0][0], ".manifest.json")
        writer.write(manifest_path, manifest.finish().payload())
    except Exception as error:
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"singular-lattice {args.command}: {type(error).__name__}: {error}", file=sys.stderr)
        return exit_code_for(error)

    print(result.summary)
    return 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
