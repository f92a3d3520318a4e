package fix;

public abstract class Shape {
    protected String name;

    public abstract double area();

    public String describe() {
        return name;
    }

    public void rename(String next) {
        name = next;
    }
}
