package fix;

public class EmptyTest {
    public void testNothing() {
        Object probe = new Empty();
        assertNotNull(probe);
    }
}
