package demo.app;

import android.graphics.Bitmap;
import android.graphics.drawable.BitmapDrawable;

class BitmapHelper {
    Bitmap unwrap(BitmapDrawable drawable) {
        Bitmap bitmap = drawable.getBitmap();
        return bitmap;
    }
}
