"""
Run manifests: canonical JSON and sha256 hashes of every emitted artifact.
"""
import hashlib
import json
import logging
from pathlib import Path

from django.conf import settings

from .models import RunManifest
from .serializers import RunManifestSerializer

logger = logging.getLogger(__name__)


def dumps(data) -> str:
    """Canonical JSON text; identical data gives identical bytes."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_json(path, data) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data), encoding='utf-8')
    return path


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(1 << 16), b''):
            h.update(chunk)
    return h.hexdigest()


def build_manifest(command, parameters, artifacts=(), grid_size=None, tolerances=None,
                   wall_time=0.0, provenance=None, exit_code=0) -> dict:
    """
    Primitive manifest record.

    Args:
        command: Command name, e.g. 'kw'
        parameters: JSON-able dict of the parsed options
        artifacts: Paths of the files the run wrote
        grid_size: Grid size when the run used a single grid
        tolerances: Tolerances in force
        wall_time: Seconds spent
        provenance: Where each emitted value came from
        exit_code: Process exit code

    Returns:
        Dict validated by RunManifestSerializer
    """
    hashes = {str(p): sha256_file(p) for p in artifacts if Path(p).exists()}
    serializer = RunManifestSerializer(data={
        'command': command,
        'parameters': parameters,
        'grid_size': grid_size,
        'tolerances': tolerances or {},
        'wall_time': wall_time,
        'artifact_hashes': hashes,
        'provenance': provenance or {},
        'exit_code': exit_code,
    })
    serializer.is_valid(raise_exception=True)
    return dict(serializer.validated_data)


def save_manifest(manifest: dict, path=None, record=None):
    """
    Write the manifest to path and, when recording is on, store it.

    Returns:
        The saved RunManifest, or None when nothing was recorded
    """
    if path:
        write_json(path, manifest)
    record = settings.VORTEXLAB['RECORD_RUNS'] if record is None else record
    if not record:
        return None
    run = RunManifest.objects.create(**manifest)
    logger.info(f"Recorded run {run.id} for '{manifest['command']}'")
    return run
