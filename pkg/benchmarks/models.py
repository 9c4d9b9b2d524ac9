from django.db import models


class BenchRecord(models.Model):
    """Resultado de resolver una instancia del corpus con un algoritmo"""
    instance_id = models.CharField(max_length=200)
    algorithm = models.CharField(max_length=30)
    row_id = models.IntegerField(null=True, blank=True)
    status = models.CharField(max_length=20, default='ok')
    feasible = models.BooleanField(null=True)
    makespan = models.IntegerField(null=True, blank=True)
    k = models.IntegerField(default=0)
    wall_time = models.FloatField(default=0.0)
    memo_entries = models.IntegerField(default=0)
    table_entries = models.IntegerField(default=0)
    nodes_expanded = models.BigIntegerField(default=0)
    trials = models.IntegerField(default=0)
    antichain_counts = models.JSONField(default=dict, blank=True)
    seed = models.IntegerField(null=True, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        verbose_name = "Registro de benchmark"
        verbose_name_plural = "Registros de benchmark"
        ordering = ['-created_at', 'instance_id']

    def __str__(self):
        return f"{self.instance_id} - {self.algorithm} ({self.status})"

    @property
    def max_antichains(self):
        """Mayor número de anticadenas en un slot"""
        return max(self.antichain_counts.values(), default=0)

    @classmethod
    def from_record(cls, record):
        """Construye el modelo (sin guardar) desde una fila del harness"""
        fields = {field.name for field in cls._meta.fields} - {'id', 'created_at'}
        data = {name: value for name, value in record.items() if name in fields and value is not None}
        data['row_id'] = record.get('row')
        return cls(**data)
