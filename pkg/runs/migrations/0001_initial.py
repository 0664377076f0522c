# Generated by Django 5.2.10 on 2026-10-18 10:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='BatchRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('root', models.CharField(max_length=500)),
                ('max_squarings', models.PositiveIntegerField()),
                ('timeout_ms', models.PositiveIntegerField(blank=True, null=True)),
                ('orthant', models.CharField(max_length=20)),
                ('strategy', models.CharField(max_length=20)),
                ('sat_count', models.PositiveIntegerField(default=0)),
                ('unsat_count', models.PositiveIntegerField(default=0)),
                ('unknown_count', models.PositiveIntegerField(default=0)),
                ('skipped_count', models.PositiveIntegerField(default=0)),
                ('total_ms', models.FloatField(default=0.0)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='RunRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('path', models.CharField(max_length=500)),
                ('family', models.CharField(blank=True, max_length=200)),
                ('verdict', models.CharField(choices=[('sat', 'sat'), ('unsat', 'unsat'), ('unknown', 'unknown')], max_length=10)),
                ('reason', models.TextField(blank=True)),
                ('witness', models.JSONField(blank=True, null=True)),
                ('parse_ms', models.FloatField(default=0.0)),
                ('encode_ms', models.FloatField(default=0.0)),
                ('solve_ms', models.FloatField(default=0.0)),
                ('base_search_ms', models.FloatField(default=0.0)),
                ('batch', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='records', to='runs.batchrun')),
            ],
            options={
                'ordering': ['batch', 'id'],
            },
        ),
    ]
