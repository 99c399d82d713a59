from django.apps import AppConfig


class PowersumsConfig(AppConfig):
    name = 'powersums'
    verbose_name = 'Power sums'
