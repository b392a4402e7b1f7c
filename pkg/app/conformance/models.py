from dataclasses import asdict

from django.db import models

from .generator import GenParams


class TimeStampedModel(models.Model):
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        abstract = True


class FuzzRun(TimeStampedModel):
    seed = models.BigIntegerField()
    cases = models.PositiveIntegerField()
    levels = models.PositiveSmallIntegerField(default=1)
    mutant = models.CharField(max_length=32, blank=True)
    params = models.JSONField(default=dict)
    step_limit = models.BigIntegerField()
    overhead_factor = models.PositiveIntegerField(default=10_000)

    def __str__(self):
        return f"Fuzz run {self.pk} (seed {self.seed}, {self.cases} cases)"

    @classmethod
    def from_params(cls, params, cases, **fields):
        params_dict = asdict(params)
        seed = params_dict.pop('seed')
        return cls.objects.create(seed=seed, cases=cases, params=params_dict, **fields)

    def gen_params(self):
        return GenParams(seed=self.seed, **self.params)

    def counts(self):
        """Number of recorded cases per verdict."""
        counts = {verdict: 0 for verdict, _ in FuzzCase.VERDICT_CHOICES}
        for row in self.results.order_by().values('verdict').annotate(total=models.Count('id')):
            counts[row['verdict']] = row['total']
        return counts


class FuzzCase(TimeStampedModel):
    VERDICT_CHOICES = (
        ('agree', 'Agree'),
        ('disagree', 'Disagree'),
        ('skipped', 'Skipped'),
    )

    run = models.ForeignKey(FuzzRun, on_delete=models.CASCADE, related_name='results')
    index = models.PositiveIntegerField()
    seed = models.BigIntegerField()
    source = models.BinaryField()
    data = models.BinaryField()
    verdict = models.CharField(max_length=10, choices=VERDICT_CHOICES)
    divergence = models.IntegerField(null=True, blank=True)
    skip_reason = models.CharField(max_length=20, blank=True)
    outcomes = models.JSONField(default=dict)

    class Meta:
        ordering = ['index']
        constraints = [
            models.UniqueConstraint(fields=['run', 'index'], name='unique_case_per_run'),
        ]

    def __str__(self):
        return f"Case {self.index} of run {self.run_id}: {self.verdict}"

    @property
    def repro(self):
        return bytes(self.source) + b'!' + bytes(self.data)
