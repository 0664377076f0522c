from django.contrib import admin

from .models import BatchRun, RunRecord


class RunRecordInline(admin.TabularInline):
    model = RunRecord
    extra = 0
    fields = ("path", "family", "verdict", "reason", "solve_ms", "base_search_ms")
    readonly_fields = fields


@admin.register(BatchRun)
class BatchRunAdmin(admin.ModelAdmin):
    list_display = (
        "root",
        "created_at",
        "strategy",
        "orthant",
        "sat_count",
        "unknown_count",
        "unsat_count",
        "skipped_count",
        "total_ms",
    )
    list_filter = ("strategy", "orthant")
    inlines = [RunRecordInline]


@admin.register(RunRecord)
class RunRecordAdmin(admin.ModelAdmin):
    list_display = ("path", "batch", "family", "verdict", "solve_ms")
    list_filter = ("verdict", "family")
    search_fields = ("path", "reason")
