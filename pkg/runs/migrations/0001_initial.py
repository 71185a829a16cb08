# Generated by Django 5.2.4

import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='RunManifest',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('command', models.CharField(max_length=50)),
                ('parameters', models.JSONField(default=dict)),
                ('grid_size', models.PositiveIntegerField(blank=True, null=True)),
                ('tolerances', models.JSONField(blank=True, default=dict)),
                ('wall_time', models.FloatField(default=0.0)),
                ('artifact_hashes', models.JSONField(blank=True, default=dict)),
                ('provenance', models.JSONField(blank=True, default=dict)),
                ('exit_code', models.SmallIntegerField(default=0)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
    ]
