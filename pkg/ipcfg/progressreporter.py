#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------
# stdlib
import math
import time

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


class ProgressReporter(object):
    """Log the progress of a long loop: percent done, rate and time left.

    Parameters
    ----------
    log : logging.Logger
    total : int
        Number of items the loop will process.
    what : str
        Plural noun for the items, used in the rate column.
    report_interval : int
        Report every this many items, and always on the last one.
    """
    def __init__(self, log, total, what='rows', report_interval=10):
        self._log = log
        self._total = total
        self._what = what
        self._reportInterval = max(1, int(report_interval))
        self._initialWallTime = None

    def start(self):
        # as late as possible, so setup work is not counted in the rate
        self._initialWallTime = time.time()

    def report(self, done):
        if self._initialWallTime is None:
            self.start()
        if done % self._reportInterval and done != self._total:
            return
        self._log.info('%s', self.format(done))

    def format(self, done):
        progressPercent = 100.0 * done / self._total if self._total else 100.0
        elapsed = time.time() - self._initialWallTime
        if progressPercent > 0 and elapsed > 0:
            timeLeft = elapsed * (100.0 - progressPercent) / progressPercent
            rate = done / elapsed
        else:
            timeLeft = float('nan')
            rate = 0.0
        return '%7.3f%% | %d/%d %s | %.2f %s/s | left %s' % (
            progressPercent, done, self._total, self._what, rate, self._what,
            self.pretty_time(timeLeft))

    @staticmethod
    def pretty_time(secs):
        """Format the time in a pretty way

        Examples
        --------
        >>> ProgressReporter.pretty_time(3725), ProgressReporter.pretty_time(float('nan'))
        ('1:02:05', '??')
        """
        if math.isnan(secs):
            return "??"
        secs = int(secs)

        days = secs // 86400
        secs -= 86400*days

        hrs = secs // 3600
        secs -= 3600*hrs

        mins = secs // 60
        secs -= 60*mins

        if days > 0:
            s = "%d:%d:%02d:%02d" % (days, hrs, mins, secs)
        elif hrs > 0:
            s = "%d:%02d:%02d" % (hrs, mins, secs)
        elif mins > 0:
            s = "%d:%02d" % (mins, secs)
        else:
            s = "0:%02d" % secs

        return s
