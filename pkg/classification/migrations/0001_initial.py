# Generated by Django 5.2.6 on 2026-10-17 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('n', models.PositiveIntegerField(help_text='Order N of the equation, dimension 2N-1')),
                ('suite', models.CharField(max_length=32)),
                ('constant_mode', models.CharField(max_length=16)),
                ('passed', models.BooleanField(default=False)),
                ('report', models.TextField(help_text='JSON report exactly as emitted')),
                ('toolkit_version', models.CharField(max_length=20)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Verification run',
                'verbose_name_plural': 'Verification runs',
                'ordering': ['-created_at', '-id'],
            },
        ),
    ]
