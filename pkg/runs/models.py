from django.db import models

from core.models import TimeStampedModel


class RunManifest(TimeStampedModel):
    """
    Provenance record of one command invocation: what was asked for, with
    which tolerances, and the sha256 of every file it wrote.
    """
    command = models.CharField(max_length=50)
    parameters = models.JSONField(default=dict)
    grid_size = models.PositiveIntegerField(null=True, blank=True)
    tolerances = models.JSONField(default=dict, blank=True)
    wall_time = models.FloatField(default=0.0)
    artifact_hashes = models.JSONField(default=dict, blank=True)
    provenance = models.JSONField(default=dict, blank=True)
    exit_code = models.SmallIntegerField(default=0)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        return f"{self.command} ({self.created_at:%Y-%m-%d %H:%M}) exit {self.exit_code}"

    @property
    def succeeded(self):
        return self.exit_code == 0
