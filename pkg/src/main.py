#!/usr/bin/env python3
"""
Quantum f-Correlations Toolkit - Main Entry Point

Skew informations, metric-adjusted f-correlations and the two-sided quantifier
Q^f, with the monotonicity scan, thermal route comparison and dilation checks.
"""
import argparse
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np

from .config import (
    DEFAULT_SEED,
    DEFAULT_F_SPEC,
    DEFAULT_SCAN_SAMPLES,
    DEFAULT_APPENDIX_TRIALS,
    OPT_RESTARTS,
    OPT_MAX_ITERS,
    OPT_TOL,
    MAX_WORKERS,
    OUTPUT_DIR,
)
from .errors import QFError, UsageError, DomainError
from .utils.logging_config import setup_logging
from .utils.run_config import load_config

logger = None  # Will be initialized in main()

SUBCOMMANDS = ('compute', 'quantify', 'scan', 'thermal', 'appendix-check', 'random-state')
PAULI_NAMES = {'x': 1, 'y': 2, 'z': 3}

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_MISSING_FILE = 3
EXIT_INTERRUPTED = 130

ROUTE_TOLERANCE = 1e-5


@dataclass
class RunConfig:
    """
    Validated settings of one invocation. Everything except the output and
    logging switches enters the config digest.
    """
    subcommand: str
    f_spec: str = DEFAULT_F_SPEC
    seed: int = DEFAULT_SEED
    threads: int = MAX_WORKERS
    state: Optional[str] = None
    obs_a: Optional[str] = None
    obs_b: Optional[str] = None
    method: str = 'auto'
    restarts: int = OPT_RESTARTS
    max_iters: int = OPT_MAX_ITERS
    tol: float = OPT_TOL
    samples: int = DEFAULT_SCAN_SAMPLES
    channel: str = 'unital'
    measure: str = 'hs'
    side: str = 'A'
    full: bool = False
    trials: int = DEFAULT_APPENDIX_TRIALS
    model: str = 'tfi'
    n_sites: int = 2
    coupling: float = 1.0
    field_strength: float = 1.0
    temperature: float = 1.0
    site_a: int = 0
    site_b: int = 1
    pauli_a: str = 'z'
    pauli_b: str = 'z'
    delta: Optional[float] = None
    dims: List[int] = field(default_factory=lambda: [2, 2])
    pure: bool = False
    out: Optional[str] = None
    summary_out: Optional[str] = None
    debug: bool = False
    log_to_file: bool = True

    def digest_fields(self):
        fields = asdict(self)
        for key in ('out', 'summary_out', 'debug', 'log_to_file', 'threads'):
            fields.pop(key)
        return fields


def build_parser():
    """
    Build the argument parser with one subparser per subcommand.

    Returns:
        argparse.ArgumentParser
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--debug', action='store_true', help='Enable debug logging')
    common.add_argument('--no-log-file', action='store_true', help='Log to stderr only')
    common.add_argument('--f', dest='f_spec', type=str, default=None,
                        help=f'Operator monotone function: bu | wy | wyd:<alpha> | qvar (default: {DEFAULT_F_SPEC})')
    common.add_argument('--seed', type=int, default=None, help=f'Master seed (default: {DEFAULT_SEED})')
    common.add_argument('--threads', type=int, default=None,
                        help=f'Worker threads (default: QF_THREADS or {MAX_WORKERS})')
    common.add_argument('--out', type=str, default=None, help='Output file (default: stdout for JSON reports)')

    parser = argparse.ArgumentParser(
        prog='qf',
        description='Quantum f-correlations: skew informations, the quantifier Q^f and its numerical checks',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s compute --state fixtures/bell_phi_plus.json --f wy
  %(prog)s quantify --state fixtures/bell_phi_plus.json --f qvar
  %(prog)s quantify --state my_qutrits.json --method opt --restarts 20 --seed 7
  %(prog)s scan --samples 100000 --f wy --seed 7 --out output/scan.csv
  %(prog)s scan --samples 10000 --channel semiclassical --out output/scan_sc.csv
  %(prog)s scan --samples 100000 --measure induced:3 --out output/scan_induced.csv
  %(prog)s thermal --model tfi --n 4 --j 1 --h 1 --t 1 --site-a 1 --site-b 2
  %(prog)s appendix-check --trials 1000 --f wyd:0.25
  %(prog)s random-state --dims 2,2 --seed 3 --out output/state.json

Functions (use --f):
  bu        (1+t)/2, ordinary covariance
  wy        Wigner-Yanase, (1+sqrt t)^2/4
  wyd:a     Wigner-Yanase-Dyson with 0 < a < 1
  qvar      quantum variance (alpha-average of WYD)

Exit status:
  0 success, 1 numerical or tolerance failure, 2 usage error,
  3 missing input file, 130 interrupted

User defaults may be stored in .config.json (keys: f, seed, restarts,
max_iters, tol, samples, trials, threads); flags override them.
        """
    )
    sub = parser.add_subparsers(dest='subcommand', metavar='SUBCOMMAND')
    sub.required = True

    p = sub.add_parser('compute', parents=[common], help='Skew informations and covariances for one state')
    p.add_argument('--state', required=True, help='State file (JSON)')
    p.add_argument('--obs-a', help='Observable on A (JSON; default sigma_z)')
    p.add_argument('--obs-b', help='Observable on B (JSON; default sigma_z)')

    p = sub.add_parser('quantify', parents=[common], help='Quantum f-correlation Q^f of a bipartite state')
    p.add_argument('--state', required=True, help='State file (JSON)')
    p.add_argument('--method', choices=['auto', 'closed', 'opt'], default='auto')
    p.add_argument('--restarts', type=int, default=None, help=f'Optimizer restarts (default: {OPT_RESTARTS})')
    p.add_argument('--max-iters', type=int, default=None, help=f'Sweeps per restart (default: {OPT_MAX_ITERS})')
    p.add_argument('--tol', type=float, default=None, help=f'Convergence tolerance (default: {OPT_TOL:g})')

    p = sub.add_parser('scan', parents=[common], help='Monotonicity scan under random local channels')
    p.add_argument('--samples', type=int, default=None, help=f'Number of samples (default: {DEFAULT_SCAN_SAMPLES})')
    p.add_argument('--channel', choices=['unital', 'semiclassical'], default='unital')
    p.add_argument('--measure', default='hs', help='State measure: hs | induced:<k> (default: hs)')
    p.add_argument('--side', choices=['A', 'B'], default='A')
    p.add_argument('--full', action='store_true', help='Write every record to the CSV')
    p.add_argument('--summary', dest='summary_out', default=None, help='JSON summary file (default: stdout)')

    p = sub.add_parser('thermal', parents=[common], help='Thermal routes to the quantum covariance')
    p.add_argument('--model', choices=['tfi'], default='tfi')
    p.add_argument('--n', dest='n_sites', type=int, default=2, help='Chain length')
    p.add_argument('--j', dest='coupling', type=float, default=1.0, help='ZZ coupling J')
    p.add_argument('--h', dest='field_strength', type=float, default=1.0, help='Transverse field h')
    p.add_argument('--t', dest='temperature', type=float, default=1.0, help='Temperature T')
    p.add_argument('--site-a', type=int, default=0)
    p.add_argument('--site-b', type=int, default=1)
    p.add_argument('--pauli-a', choices=['x', 'y', 'z'], default='z')
    p.add_argument('--pauli-b', choices=['x', 'y', 'z'], default='z')
    p.add_argument('--delta', type=float, default=None, help='Finite-difference step')

    p = sub.add_parser('appendix-check', parents=[common], help='Dilation identity and contraction checks')
    p.add_argument('--trials', type=int, default=None, help=f'Number of trials (default: {DEFAULT_APPENDIX_TRIALS})')
    p.add_argument('--side', choices=['A', 'B'], default='A')

    p = sub.add_parser('random-state', parents=[common], help='Write a random state file')
    p.add_argument('--dims', default='2,2', help='Comma-separated subsystem dimensions')
    p.add_argument('--pure', action='store_true', help='Haar-random pure state instead')
    p.add_argument('--measure', default='hs', help='State measure: hs | induced:<k> (default: hs)')

    return parser


def _pick(cli_value, user_config, key, default):
    if cli_value is not None:
        return cli_value
    if user_config and key in user_config:
        return user_config[key]
    return default


def _measure(text):
    from .hermitian_core.sampling import measure_label, parse_measure

    try:
        return measure_label(parse_measure(text))
    except DomainError as e:
        raise UsageError(str(e))


def _require_file(path):
    if path is not None and not Path(path).exists():
        raise FileNotFoundError(f"No such file: {path}")


def parse_args(argv=None) -> RunConfig:
    """
    Parse and validate command-line arguments.

    Returns:
        RunConfig

    Raises:
        SystemExit(2): From argparse on unknown flags or bad syntax
        UsageError: On invalid values
        FileNotFoundError: If an input file is missing
    """
    from .f_catalog.functions import parse_f_spec

    args = build_parser().parse_args(argv)
    user = load_config()

    config = RunConfig(subcommand=args.subcommand)
    config.debug = args.debug
    config.log_to_file = not args.no_log_file
    config.out = args.out
    config.f_spec = str(_pick(args.f_spec, user, 'f', DEFAULT_F_SPEC))
    config.seed = int(_pick(args.seed, user, 'seed', DEFAULT_SEED))
    config.threads = int(_pick(args.threads, user, 'threads', MAX_WORKERS))

    try:
        config.f_spec = parse_f_spec(config.f_spec).label
    except DomainError as e:
        raise UsageError(str(e))

    if config.threads < 1:
        raise UsageError(f"--threads must be >= 1, got {config.threads}")

    command = args.subcommand
    if command in ('compute', 'quantify'):
        config.state = args.state
        _require_file(config.state)

    if command == 'compute':
        config.obs_a = args.obs_a
        config.obs_b = args.obs_b
        _require_file(config.obs_a)
        _require_file(config.obs_b)

    elif command == 'quantify':
        config.method = args.method
        config.restarts = int(_pick(args.restarts, user, 'restarts', OPT_RESTARTS))
        config.max_iters = int(_pick(args.max_iters, user, 'max_iters', OPT_MAX_ITERS))
        config.tol = float(_pick(args.tol, user, 'tol', OPT_TOL))
        if config.restarts < 1 or config.max_iters < 1 or config.tol <= 0:
            raise UsageError("--restarts and --max-iters must be >= 1 and --tol positive")

    elif command == 'scan':
        config.samples = int(_pick(args.samples, user, 'samples', DEFAULT_SCAN_SAMPLES))
        config.channel = args.channel
        config.measure = _measure(args.measure)
        config.side = args.side
        config.full = args.full
        config.summary_out = args.summary_out
        if config.samples < 0:
            raise UsageError(f"--samples must be nonnegative, got {config.samples}")
        if config.out is None:
            config.out = str(Path(OUTPUT_DIR) / 'scan.csv')

    elif command == 'thermal':
        config.model = args.model
        config.n_sites = args.n_sites
        config.coupling = args.coupling
        config.field_strength = args.field_strength
        config.temperature = args.temperature
        config.site_a = args.site_a
        config.site_b = args.site_b
        config.pauli_a = args.pauli_a
        config.pauli_b = args.pauli_b
        config.delta = args.delta
        if not (0 <= config.site_a < config.n_sites and 0 <= config.site_b < config.n_sites):
            raise UsageError(f"Sites must lie in 0..{config.n_sites - 1}")
        if config.temperature <= 0 or (config.delta is not None and config.delta <= 0):
            raise UsageError("--t and --delta must be positive")

    elif command == 'appendix-check':
        config.trials = int(_pick(args.trials, user, 'trials', DEFAULT_APPENDIX_TRIALS))
        config.side = args.side
        if config.trials < 1:
            raise UsageError(f"--trials must be >= 1, got {config.trials}")

    elif command == 'random-state':
        try:
            config.dims = [int(d) for d in args.dims.split(',') if d.strip()]
        except ValueError:
            raise UsageError(f"Invalid --dims {args.dims!r}")
        if not config.dims or any(d < 1 for d in config.dims):
            raise UsageError(f"Invalid --dims {args.dims!r}")
        config.pure = args.pure
        config.measure = _measure(args.measure)

    return config


def _local_observable(path, side, dims):
    from .correlations.observable import Observable
    from .hermitian_core.operators import SIGMA_Z, embed_operator
    from .hermitian_core.state_io import load_observable

    index = 0 if side == 'A' else 1
    if path is None:
        if dims[index] != 2:
            raise UsageError(f"Subsystem {side} is not a qubit; pass --obs-{side.lower()}")
        return Observable(matrix=embed_operator(SIGMA_Z, index, dims))

    obs = load_observable(path)
    if obs.dim == dims[index]:
        return Observable(matrix=obs.embedded(index, dims))
    if obs.dim == int(np.prod(dims)):
        return obs
    raise UsageError(f"Observable in {path} has dimension {obs.dim}, which fits neither subsystem {side} nor the state")


def run_compute(config, f):
    from .correlations.functionals import (
        covariance, f_correlation, f_correlation_two_route, f_covariance, masi, nonadditivity_gap,
    )
    from .hermitian_core.state_io import load_state

    rho = load_state(config.state)
    if len(rho.dims) < 2:
        raise UsageError(f"compute needs a state with at least two subsystems, got dims {list(rho.dims)}")
    a = _local_observable(config.obs_a, 'A', rho.dims)
    b = _local_observable(config.obs_b, 'B', rho.dims)

    report = {
        'masi_a': masi(rho, a, f),
        'masi_b': masi(rho, b, f),
        'covariance': covariance(rho, a, b),
        'f_covariance': f_covariance(rho, a, b, f),
        'f_correlation': f_correlation(rho, a, b, f),
        'f_correlation_two_route': f_correlation_two_route(rho, a, b, f),
        'nonadditivity_gap': nonadditivity_gap(rho, a, b, f),
    }
    return report, EXIT_OK


def run_quantify(config, f):
    from .hermitian_core.state_io import load_state
    from .qfcorr.optimizer import quantify

    rho = load_state(config.state)
    result = quantify(
        rho, f, method=config.method, restarts=config.restarts, max_iters=config.max_iters,
        tol=config.tol, seed=config.seed, max_workers=config.threads,
    )
    logger.info(f"Q^f = {result.value:.12f} ({result.method}, f={f.label})")
    return result.get_summary(), EXIT_OK


def run_scan(config, f):
    from .channels.scan import monotonicity_scan
    from .hermitian_core.sampling import parse_measure
    from .output.report_writer import ReportWriter

    report = monotonicity_scan(
        config.samples, f, master_seed=config.seed, channel=config.channel, side=config.side,
        max_workers=config.threads, rank=parse_measure(config.measure),
    )
    ReportWriter().write_scan_csv(report, config.out, full=config.full)

    summary = report.get_summary()
    summary['csv'] = Path(config.out).name
    status = EXIT_OK
    if config.channel == 'semiclassical' and report.violation_count:
        logger.error(f"Semi-classical channels produced {report.violation_count} violations")
        status = EXIT_FAILURE
    return summary, status


def run_thermal(config, f):
    from .hermitian_core.operators import PAULIS
    from .thermal.chain import SpinChainSpec, site_operator, tfi_hamiltonian
    from .thermal.fluctuations import compare_routes

    chain = SpinChainSpec(config.n_sites, j=config.coupling, h=config.field_strength, model=config.model)
    h = tfi_hamiltonian(chain)
    o_a = site_operator(PAULIS[PAULI_NAMES[config.pauli_a] - 1], config.site_a, chain.n_sites)
    o_b = site_operator(PAULIS[PAULI_NAMES[config.pauli_b] - 1], config.site_b, chain.n_sites)

    comparison = compare_routes(h, config.temperature, o_a, o_b, delta=config.delta)
    report = comparison.get_summary()
    report['route_gap'] = comparison.route_gap
    report['kubo_mori_gap'] = comparison.kubo_mori_gap

    status = EXIT_OK
    if comparison.route_gap > ROUTE_TOLERANCE or comparison.kubo_mori_gap > ROUTE_TOLERANCE:
        logger.error(f"Thermal routes disagree: route gap {comparison.route_gap:.3e}, "
                     f"Kubo-Mori gap {comparison.kubo_mori_gap:.3e}")
        status = EXIT_FAILURE
    return report, status


def run_appendix(config, f):
    from .appendix_monotone.dilation import appendix_trials

    summary = appendix_trials(config.trials, f, master_seed=config.seed, side=config.side,
                              max_workers=config.threads)
    return summary.get_summary(), EXIT_OK if summary.failures == 0 else EXIT_FAILURE


def run_random_state(config, f):
    from .hermitian_core.sampling import RngStream, parse_measure, random_density_hs, random_pure_state
    from .hermitian_core.state_io import matrix_to_json
    from .hermitian_core.states import pure_density

    d = int(np.prod(config.dims))
    stream = RngStream(config.seed, 0)
    if config.pure:
        rho = pure_density(random_pure_state(d, stream), config.dims)
    else:
        rho = random_density_hs(d, stream, dims=config.dims, rank=parse_measure(config.measure))
    return {'dims': list(rho.dims), 'matrix': matrix_to_json(rho.matrix)}, EXIT_OK


HANDLERS = {
    'compute': run_compute,
    'quantify': run_quantify,
    'scan': run_scan,
    'thermal': run_thermal,
    'appendix-check': run_appendix,
    'random-state': run_random_state,
}


def run(config: RunConfig) -> int:
    """
    Execute a validated configuration and write its artifacts.

    Returns:
        Exit status
    """
    from .f_catalog.functions import parse_f_spec
    from .output.report_writer import ReportWriter, config_digest

    f = parse_f_spec(config.f_spec)
    report, status = HANDLERS[config.subcommand](config, f)

    writer = ReportWriter()
    if config.subcommand == 'random-state':
        # State files keep the plain state format so they load back directly
        writer.write_json(report, config.out)
        return status

    report['command'] = config.subcommand
    report['config_digest'] = config_digest(config.digest_fields())
    target = config.summary_out if config.subcommand == 'scan' else config.out
    writer.write_json(report, target)
    return status


def main(argv=None):
    """
    Main entry point.
    """
    global logger

    try:
        config = parse_args(argv)
    except SystemExit as e:
        # argparse already printed the message
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except UsageError as e:
        print(f"qf: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"qf: error: {e}", file=sys.stderr)
        return EXIT_MISSING_FILE

    logger = setup_logging(debug=config.debug, log_to_file=config.log_to_file)
    logger.info(f"Running '{config.subcommand}' (f={config.f_spec}, seed={config.seed})")

    try:
        return run(config)

    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_INTERRUPTED

    except UsageError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE

    except FileNotFoundError as e:
        logger.error(f"Missing file: {e}")
        return EXIT_MISSING_FILE

    except QFError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE

    except Exception as e:
        logger.error(f"Fatal error: {e}", exc_info=True)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
