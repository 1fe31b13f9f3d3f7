package demo.app;

import android.animation.Animator;
import android.view.View;

class AnimatorDemo {
    void toggle(View view, Animator anim) {
        view.setVisibility(View.VISIBLE);
        anim.setDuration(1000);
        view.setVisibility(View.GONE);
    }
}
