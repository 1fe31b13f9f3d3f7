package demo.app;

import com.google.gwt.user.client.Window;
import com.google.gwt.user.client.ui.Button;
import com.google.gwt.user.client.ui.RootPanel;

class WebApp {
    void mount(RootPanel root, Button button) {
        root.add(button);
        Window.alert("ready");
    }
}
