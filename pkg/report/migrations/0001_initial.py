from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ReportRow',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('config_id', models.PositiveSmallIntegerField(help_text='Side-information configuration, 0-63')),
                ('bits', models.CharField(help_text='a12 a13 a21 a23 a31 a32', max_length=6)),
                ('complete_sets', models.CharField(help_text='Maximum complete sets, e.g. "{1,3} {2}"', max_length=64)),
                ('tightness', models.CharField(choices=[('case1', 'Case 1'), ('case2', 'Case 2'), ('case3', 'Case 3'), ('case4', 'Case 4'), ('open', 'Open')], max_length=10)),
                ('inner_sum', models.FloatField(help_text='Inner-bound sum rate')),
                ('outer_sum', models.FloatField(help_text='Outer-bound sum-rate estimate')),
                ('max_gap', models.FloatField(help_text='Largest outer minus inner ray scale over sampled directions')),
                ('power', models.FloatField()),
                ('n1', models.FloatField()),
                ('n2', models.FloatField()),
                ('n3', models.FloatField()),
                ('base', models.CharField(default='2', max_length=1)),
                ('grid', models.PositiveIntegerField(default=200)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'ordering': ['config_id'],
                'indexes': [models.Index(fields=['tightness'], name='report_tightness_idx')],
                'constraints': [models.UniqueConstraint(fields=('config_id', 'power', 'n1', 'n2', 'n3', 'base'), name='unique_report_row')],
            },
        ),
    ]
