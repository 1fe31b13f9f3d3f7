package demo.app;

import org.joda.time.DateTime;
import org.joda.time.Duration;

class Times {
    DateTime tomorrow(DateTime base) {
        return base.plusDays(1);
    }

    long span(Duration d) {
        return d.getStandardSeconds();
    }
}
