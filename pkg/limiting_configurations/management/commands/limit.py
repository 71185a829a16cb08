from pathlib import Path

from core.conf import numerics
from runs.command import VortexCommand, read_json, usage_error
from torus_geometry.grid import make_grid
from vortex_correspondence.serializers import TripleSpecSerializer
from vortex_correspondence.triples import split_theta_triple
from limiting_configurations.serializers import LimitingStateSerializer, write_sweep_csv
from limiting_configurations.simple_gauge import simple_gauge
from limiting_configurations.sweep import t_sweep


def parse_t_list(text):
    try:
        values = [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise usage_error(f"--t must be a comma separated list of numbers, got {text!r}")
    if not values:
        raise usage_error("--t needs at least one value")
    return values


def default_zeros(count, row):
    """count evenly spaced points on the horizontal line y = row."""
    return [((i + 0.5) / count, row) for i in range(count)]


class Command(VortexCommand):
    help = 'Simple gauge limiting configurations and the t -> 0 concentration sweep'

    def add_run_arguments(self, parser):
        parser.add_argument('action', choices=['sweep', 'gauge'])
        parser.add_argument('--m', type=int, default=1, help='Degree of M in the split bundle M + M^-1')
        parser.add_argument('--d', type=int, default=0, help='Degree of L')
        parser.add_argument('--n', type=int, default=128, help='Grid size')
        parser.add_argument('--triple', type=str, help='Triple JSON file (overrides --m, --d, --n)')
        parser.add_argument('--t', type=str, default='1,0.5,0.25,0.125', help='Descending t values')
        parser.add_argument('--tau', type=float, default=0.0, help='Vortex parameter tau')
        parser.add_argument('--tol', type=float, default=1e-8, help='Residual target per solve')
        parser.add_argument('--ball-radius', type=float, help='Flux ball radius')
        parser.add_argument('--mask-radius', type=float, help='Mask radius around each zero')
        parser.add_argument('--amplitude', type=float, help='Factor on alpha and beta before the 1/t scaling')
        parser.add_argument('--jobs', type=int, default=1, help='Concurrent solves across t')
        parser.add_argument('--out', type=str, help='Output file (stdout if omitted)')

    def build_triple(self, options):
        if options['triple']:
            serializer = TripleSpecSerializer(data=read_json(options['triple']))
            if not serializer.is_valid():
                raise usage_error(f"invalid triple file: {serializer.errors}")
            return serializer.to_triple()
        m, d = options['m'], options['d']
        if m - abs(d) < 1:
            raise usage_error(f"alpha and beta both need zeros: require |d| < m, got m={m}, d={d}")
        return split_theta_triple(
            make_grid(options['n']), m, d,
            alpha_zeros=default_zeros(m + d, 0.3),
            beta_zeros=default_zeros(m - d, 0.7),
        )

    def run(self, **options):
        if options['jobs'] < 1:
            raise usage_error("--jobs must be at least 1")
        triple = self.build_triple(options)
        self.grid_size = triple.grid.n
        self.provenance = {'sweep': 'computed'}

        if options['action'] == 'gauge':
            state = simple_gauge(triple, options['mask_radius'])
            self.emit_json(LimitingStateSerializer(state).data, options['out'])
            return

        self.tolerances = {'tol': options['tol'], 'flux_rtol': numerics('FLUX_RTOL')}
        if options['amplitude'] is not None and options['amplitude'] <= 0:
            raise usage_error("--amplitude must be positive")
        records = t_sweep(
            triple,
            parse_t_list(options['t']),
            options['tau'],
            ball_radius=options['ball_radius'],
            tol=options['tol'],
            jobs=options['jobs'],
            mask_radius=options['mask_radius'],
            amplitude=options['amplitude'],
        )
        if options['out']:
            with open(options['out'], 'w', encoding='utf-8', newline='') as f:
                write_sweep_csv(records, f)
            self.register_artifact(Path(options['out']))
        else:
            write_sweep_csv(records, self.stdout)

        last = records[-1]
        for zero, error in zip(last.zeros, last.relative_flux_errors()):
            self.stderr.write(f"t={last.t} zero {zero.zero_id} q={zero.q:+d}: relative flux error {error:.3f}")
        stalled = [r.t for r in records if r.stalled]
        if stalled:
            self.stderr.write(f"Newton stalled at t in {stalled}")
