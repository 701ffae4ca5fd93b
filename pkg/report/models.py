from django.db import models


class ReportRow(models.Model):
    """
    One configuration's line of the all-configurations report, for a given channel.
    """
    TIGHTNESS_CHOICES = [
        ('case1', 'Case 1'),
        ('case2', 'Case 2'),
        ('case3', 'Case 3'),
        ('case4', 'Case 4'),
        ('open', 'Open'),
    ]

    config_id = models.PositiveSmallIntegerField(help_text='Side-information configuration, 0-63')
    bits = models.CharField(max_length=6, help_text='a12 a13 a21 a23 a31 a32')
    complete_sets = models.CharField(max_length=64, help_text='Maximum complete sets, e.g. "{1,3} {2}"')
    tightness = models.CharField(max_length=10, choices=TIGHTNESS_CHOICES)

    inner_sum = models.FloatField(help_text='Inner-bound sum rate')
    outer_sum = models.FloatField(help_text='Outer-bound sum-rate estimate')
    max_gap = models.FloatField(help_text='Largest outer minus inner ray scale over sampled directions')

    # Channel the row was computed for
    power = models.FloatField()
    n1 = models.FloatField()
    n2 = models.FloatField()
    n3 = models.FloatField()
    base = models.CharField(max_length=1, default='2')
    grid = models.PositiveIntegerField(default=200)

    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ['config_id']
        constraints = [
            models.UniqueConstraint(
                fields=['config_id', 'power', 'n1', 'n2', 'n3', 'base'], name='unique_report_row',
            ),
        ]
        indexes = [
            models.Index(fields=['tightness'], name='report_tightness_idx'),
        ]

    def __str__(self):
        return f"#{self.config_id} ({self.bits}) - {self.tightness} - P={self.power}"
