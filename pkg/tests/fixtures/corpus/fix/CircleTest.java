package fix;

import org.junit.Test;

public class CircleTest {
    @Test
    public void testArea() {
        Circle circle = new Circle(1.0);
        assertEquals(3.14159, circle.area(), 0.0001);
    }

    @Test
    public void testScaleRejectsNegatives() {
        Circle circle = new Circle(2.0);
        try {
            circle.scale(-1.0);
            fail("expected rejection");
        } catch (IllegalArgumentException expected) {
        }
    }
}
