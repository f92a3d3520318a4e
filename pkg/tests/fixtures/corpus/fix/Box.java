package fix;

/** A labeled container. */
public class Box {
    private int size;
    // current label
    private String label = "none";

    public Box(int size) {
        this.size = size;
    }

    public int grow(int amount) {
        int next = size + amount;
        log(next);
        System.out.println(label);
        System.out.println(next);
        return next;
    }

    private void log(int value) {
        size = value;
    }
}
