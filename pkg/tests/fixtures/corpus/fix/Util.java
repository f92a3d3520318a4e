package fix;

public final class Util {
    public static final int VERSION = 2;

    public static double measure(Shape shape) {
        double total = 0.0;
        for (int i = 0; i < VERSION; i++) {
            total += shape.area();
        }
        return total;
    }

    protected static String tag(Box box) {
        return "box" + box.grow(1);
    }
}
