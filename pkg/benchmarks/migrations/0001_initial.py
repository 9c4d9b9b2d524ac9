from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='BenchRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('instance_id', models.CharField(max_length=200)),
                ('algorithm', models.CharField(max_length=30)),
                ('row_id', models.IntegerField(blank=True, null=True)),
                ('status', models.CharField(default='ok', max_length=20)),
                ('feasible', models.BooleanField(null=True)),
                ('makespan', models.IntegerField(blank=True, null=True)),
                ('k', models.IntegerField(default=0)),
                ('wall_time', models.FloatField(default=0.0)),
                ('memo_entries', models.IntegerField(default=0)),
                ('table_entries', models.IntegerField(default=0)),
                ('nodes_expanded', models.BigIntegerField(default=0)),
                ('trials', models.IntegerField(default=0)),
                ('antichain_counts', models.JSONField(blank=True, default=dict)),
                ('seed', models.IntegerField(blank=True, null=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Registro de benchmark',
                'verbose_name_plural': 'Registros de benchmark',
                'ordering': ['-created_at', 'instance_id'],
            },
        ),
    ]
