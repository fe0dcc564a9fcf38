from django.db import models


class ReportRecordQuerySet(models.QuerySet):
    def for_subcommand(self, subcommand):
        return self.filter(subcommand=subcommand)

    def failures(self):
        return self.filter(passed=False)


class ReportRecord(models.Model):
    """
    An archived report of one management-command run.

    Fields:
        subcommand (CharField): The command that produced the report (e.g. 'rallis').
        config (JSONField): The RunConfig the run used.
        payload (JSONField): The serialized report.
        passed (BooleanField): Whether every check in the report passed.
        created (DateTimeField): When the report was recorded.
    """
    objects = ReportRecordQuerySet.as_manager()

    subcommand = models.CharField(max_length=32)
    config = models.JSONField()
    payload = models.JSONField()
    passed = models.BooleanField(default=True)
    created = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['created', 'id']

    def __str__(self):
        state = 'passed' if self.passed else 'failed'
        return f"{self.subcommand} report ({state}) at {self.created:%Y-%m-%d %H:%M:%S}"
