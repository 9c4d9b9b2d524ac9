"""
Serializers DRF para los formatos JSON de instancias, schedules y grafos fuente.

Solo validan la forma (tipos, campos desconocidos). Las reglas semánticas
(p >= 1, k <= n, ciclos...) las reporta core.validate_instance.
"""
from rest_framework import serializers


class StrictSerializer(serializers.Serializer):
    """Serializer que rechaza campos no declarados"""

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError(
                    {name: ['Campo desconocido.'] for name in unknown}
                )
        return super().to_internal_value(data)


class ProcessingTimeField(serializers.Field):
    """`p` admite un entero (máquinas idénticas) o una lista (no relacionadas)"""

    default_error_messages = {
        'invalid': 'Debe ser un entero o una lista de enteros.',
    }

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        if isinstance(data, int):
            return (data,)
        if isinstance(data, list) and data and all(
            isinstance(value, int) and not isinstance(value, bool) for value in data
        ):
            return tuple(data)
        self.fail('invalid')

    def to_representation(self, value):
        if len(value) == 1:
            return value[0]
        return list(value)


class JobSerializer(StrictSerializer):
    id = serializers.CharField()
    p = ProcessingTimeField()
    r = serializers.IntegerField(default=0)
    d = serializers.IntegerField(allow_null=True, default=None)


class MachinesSerializer(StrictSerializer):
    kind = serializers.ChoiceField(choices=['single', 'identical', 'unrelated'])
    count = serializers.IntegerField(default=1)


class InstanceSerializer(StrictSerializer):
    machines = MachinesSerializer()
    jobs = JobSerializer(many=True)
    prec = serializers.ListField(
        child=serializers.ListField(
            child=serializers.CharField(), min_length=2, max_length=2
        ),
        default=list,
    )
    k = serializers.IntegerField()
    cmax = serializers.IntegerField(allow_null=True, default=None)


class ScheduleEntrySerializer(StrictSerializer):
    job = serializers.CharField()
    machine = serializers.IntegerField(min_value=0)
    start = serializers.IntegerField()


class ScheduleSerializer(StrictSerializer):
    entries = ScheduleEntrySerializer(many=True)
    makespan = serializers.IntegerField(allow_null=True, default=None)


class SourceGraphSerializer(StrictSerializer):
    vertices = serializers.ListField(child=serializers.CharField())
    edges = serializers.ListField(
        child=serializers.ListField(
            child=serializers.CharField(), min_length=2, max_length=2
        ),
        default=list,
    )
    chi = serializers.DictField(child=serializers.CharField(), required=False)
