# Generated by Django 4.2.7 on 2026-10-18 09:12

from django.db import migrations, models
import django.db.models.deletion


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='FuzzRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('seed', models.BigIntegerField()),
                ('cases', models.PositiveIntegerField()),
                ('levels', models.PositiveSmallIntegerField(default=1)),
                ('mutant', models.CharField(blank=True, max_length=32)),
                ('params', models.JSONField(default=dict)),
                ('step_limit', models.BigIntegerField()),
                ('overhead_factor', models.PositiveIntegerField(default=10000)),
            ],
            options={
                'abstract': False,
            },
        ),
        migrations.CreateModel(
            name='FuzzCase',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('index', models.PositiveIntegerField()),
                ('seed', models.BigIntegerField()),
                ('source', models.BinaryField()),
                ('data', models.BinaryField()),
                ('verdict', models.CharField(choices=[('agree', 'Agree'), ('disagree', 'Disagree'), ('skipped', 'Skipped')], max_length=10)),
                ('divergence', models.IntegerField(blank=True, null=True)),
                ('skip_reason', models.CharField(blank=True, max_length=20)),
                ('outcomes', models.JSONField(default=dict)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='results', to='conformance.fuzzrun')),
            ],
            options={
                'ordering': ['index'],
            },
        ),
        migrations.AddConstraint(
            model_name='fuzzcase',
            constraint=models.UniqueConstraint(fields=('run', 'index'), name='unique_case_per_run'),
        ),
    ]
