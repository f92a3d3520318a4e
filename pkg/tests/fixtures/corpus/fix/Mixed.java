package fix;

public class Mixed {
    public int a;
    private int b;
    protected int c;
    int d;
    private static String kind = "mixed";

    public void first(int x, String s) {
        a = x + s.length();
    }

    public void second(int x) {
        b = x;
    }

    private String third() {
        return kind + c;
    }

    protected int fourth() {
        switch (d) {
            case 1:
                return 1;
            case 2:
                return 2;
            default:
                return d > 2 ? d : 0;
        }
    }
}
