from django.db import models


class BatchRun(models.Model):
    """One `stropsat batch --save` invocation over a corpus directory."""

    root = models.CharField(max_length=500)
    max_squarings = models.PositiveIntegerField()
    timeout_ms = models.PositiveIntegerField(null=True, blank=True)
    orthant = models.CharField(max_length=20)
    strategy = models.CharField(max_length=20)
    sat_count = models.PositiveIntegerField(default=0)
    unsat_count = models.PositiveIntegerField(default=0)
    unknown_count = models.PositiveIntegerField(default=0)
    skipped_count = models.PositiveIntegerField(default=0)
    total_ms = models.FloatField(default=0.0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created_at"]

    def __str__(self):
        return f"{self.root} ({self.sat_count} sat / {self.unknown_count} unknown / {self.unsat_count} unsat)"


class RunRecord(models.Model):
    VERDICT_CHOICES = (
        ("sat", "sat"),
        ("unsat", "unsat"),
        ("unknown", "unknown"),
    )

    batch = models.ForeignKey(BatchRun, on_delete=models.CASCADE, related_name="records")
    path = models.CharField(max_length=500)
    family = models.CharField(max_length=200, blank=True)
    verdict = models.CharField(max_length=10, choices=VERDICT_CHOICES)
    reason = models.TextField(blank=True)
    # {"x": {"num": "1", "den": "2"}, ...}
    witness = models.JSONField(null=True, blank=True)
    parse_ms = models.FloatField(default=0.0)
    encode_ms = models.FloatField(default=0.0)
    solve_ms = models.FloatField(default=0.0)
    base_search_ms = models.FloatField(default=0.0)

    class Meta:
        ordering = ["batch", "id"]

    def __str__(self):
        return f"{self.path}: {self.verdict}"
