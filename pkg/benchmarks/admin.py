from django.contrib import admin
from .models import BenchRecord


@admin.register(BenchRecord)
class BenchRecordAdmin(admin.ModelAdmin):
    list_display = ('instance_id', 'algorithm', 'row_id', 'status', 'feasible', 'makespan', 'wall_time', 'created_at')
    list_filter = ('algorithm', 'status', 'feasible', 'row_id')
    search_fields = ('instance_id',)
    readonly_fields = ('created_at',)
    date_hierarchy = 'created_at'
