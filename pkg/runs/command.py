"""
Base class for the vortexlab management commands.

Subclasses implement run(**options). Domain failures leave with exit code 1,
unreadable input and usage problems with exit code 2, and every invocation
can leave a manifest behind.
"""
import json
import logging
import time
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from core.exceptions import VortexLabError
from .manifest import build_manifest, save_manifest, write_json

logger = logging.getLogger(__name__)

# Options that belong to Django rather than to the run
DJANGO_OPTIONS = {
    'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color',
    'skip_checks', 'stdout', 'stderr', 'manifest', 'record',
}


def usage_error(message):
    return CommandError(message, returncode=2)


def read_json(path):
    """Load a JSON input file, reporting any failure as a usage error."""
    try:
        with open(path, encoding='utf-8') as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise usage_error(f"cannot read {path}: {e}")


def validated(serializer_class, data):
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        raise usage_error(f"invalid input: {serializer.errors}")
    return serializer.validated_data


class VortexCommand(BaseCommand):
    """Management command with manifest support and exit-code translation."""

    def add_arguments(self, parser):
        parser.add_argument(
            '--manifest',
            type=str,
            help='Write a run manifest (parameters, tolerances, artifact sha256) to this path',
        )
        parser.add_argument(
            '--record',
            action='store_true',
            help='Store the run manifest in the database',
        )
        self.add_run_arguments(parser)

    def add_run_arguments(self, parser):
        pass

    def run(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        self.artifacts = []
        self.grid_size = None
        self.tolerances = {}
        self.provenance = {}
        started = time.perf_counter()
        exit_code = 0
        try:
            self.run(**options)
        except CommandError as e:
            exit_code = e.returncode
            raise
        except serializers.ValidationError as e:
            exit_code = 2
            raise usage_error(f"invalid input: {e.detail}")
        except VortexLabError as e:
            exit_code = 1
            raise CommandError(f"{type(e).__name__}: {e}", returncode=1)
        finally:
            self._finish(options, exit_code, time.perf_counter() - started)

    def _finish(self, options, exit_code, wall_time):
        path, record = options.get('manifest'), options.get('record')
        if not path and not record:
            return
        parameters = {
            key: value for key, value in options.items()
            if key not in DJANGO_OPTIONS and isinstance(value, (str, int, float, bool, type(None), list))
        }
        manifest = build_manifest(
            command=self.__module__.rsplit('.', 1)[-1],
            parameters=parameters,
            artifacts=self.artifacts,
            grid_size=self.grid_size,
            tolerances=self.tolerances,
            wall_time=wall_time,
            provenance=self.provenance,
            exit_code=exit_code,
        )
        save_manifest(manifest, path, record or None)

    def emit_json(self, data, out=None):
        """Write JSON to out (and register it as an artifact) or to stdout."""
        if out:
            write_json(out, data)
            self.artifacts.append(Path(out))
            logger.info(f"Wrote {out}")
        else:
            self.stdout.write(json.dumps(data, sort_keys=True, indent=2))

    def register_artifact(self, path):
        self.artifacts.append(Path(path))
